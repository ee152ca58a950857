// Copyright 2026 The QOC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "core/systems.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace qoc {

CMatrix ParameterizedSystem::hamiltonian(double omega, const Eigen::VectorXd& amps) const {
  if (static_cast<std::size_t>(amps.size()) != controls.size())
    throw std::invalid_argument("hamiltonian: amplitude count does not match control count");
  CMatrix h = drift(omega);
  for (std::size_t j = 0; j < controls.size(); ++j) h += amps(static_cast<Eigen::Index>(j)) * controls[j];
  return h;
}

ParameterizedSystem make_system(CMatrix h1, CMatrix h2, std::vector<CMatrix> controls) {
  if (h1.rows() != h1.cols() || h2.rows() != h2.cols() || h1.rows() != h2.rows())
    throw std::invalid_argument("make_system: h1 and h2 must be square and of equal dimension");
  if (!is_hermitian(h1) || !is_hermitian(h2))
    throw std::invalid_argument("make_system: drift parts must be Hermitian");
  for (const auto& c : controls) {
    if (c.rows() != h1.rows() || c.cols() != h1.cols())
      throw std::invalid_argument("make_system: control dimension mismatch");
    if (!is_hermitian(c))
      throw std::invalid_argument("make_system: control Hamiltonians must be Hermitian");
  }
  ParameterizedSystem sys;
  sys.dim = h1.rows();
  sys.h1 = std::move(h1);
  sys.h2 = std::move(h2);
  sys.controls = std::move(controls);
  return sys;
}

ParameterizedSystem system_a() {
  const CMatrix I = pauli_i(), X = pauli_x(), Y = pauli_y(), Z = pauli_z();
  CMatrix h1 = kron(X, I);
  CMatrix h2 = kron(X, X) + kron(Y, Y) + kron(Z, Z);
  return make_system(h1, h2, {kron(Z, I)});
}

ParameterizedSystem system_b(SystemBVariant variant) {
  const CMatrix I = pauli_i(), X = pauli_x(), Y = pauli_y(), Z = pauli_z();
  CMatrix h1 = variant == SystemBVariant::eq4 ? CMatrix(kron(X, I) + kron(I, X))
                                              : CMatrix(kron(X, X) + kron(I, X));
  CMatrix h2 = kron(Z, I) + kron(Y, Y) + kron(Z, Z);
  return make_system(h1, h2, {kron(X, I)});
}

OmegaGrid discretize(double omega_0, double omega_1, std::size_t n) {
  if (n == 0) throw std::invalid_argument("discretize: n must be positive");
  if (n > 1 && omega_0 >= omega_1)
    throw std::invalid_argument("discretize: require omega_0 < omega_1 for n >= 2");
  OmegaGrid grid;
  grid.omega0 = omega_0;
  grid.omega1 = n == 1 ? omega_0 : omega_1;
  if (n == 1) {
    grid.points = {omega_0};
    return grid;
  }
  double spacing = (omega_1 - omega_0) / static_cast<double>(n - 1);
  grid.points.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    grid.points[k] = omega_0 + static_cast<double>(k) * spacing;
  grid.points.front() = omega_0;
  grid.points.back() = omega_1;
  return grid;
}

EnsembleSystem lift_ensemble(const ParameterizedSystem& sys, const OmegaGrid& grid) {
  const Eigen::Index d = sys.dim;
  const Eigen::Index n = static_cast<Eigen::Index>(grid.size());
  EnsembleSystem ens;
  ens.base = sys;
  ens.grid = grid;
  ens.lifted_drift = CMatrix::Zero(n * d, n * d);
  for (Eigen::Index k = 0; k < n; ++k)
    ens.lifted_drift.block(k * d, k * d, d, d) = sys.drift(grid.points[static_cast<std::size_t>(k)]);
  for (const auto& c : sys.controls) {
    CMatrix lifted = CMatrix::Zero(n * d, n * d);
    for (Eigen::Index k = 0; k < n; ++k) lifted.block(k * d, k * d, d, d) = c;
    ens.lifted_controls.push_back(std::move(lifted));
  }
  return ens;
}

namespace {

CMatrix pauli_by_letter(char c) {
  switch (c) {
    case 'I': return pauli_i();
    case 'X': return pauli_x();
    case 'Y': return pauli_y();
    case 'Z': return pauli_z();
    default: throw std::invalid_argument(std::string("unknown Pauli letter '") + c + "'");
  }
}

CMatrix pauli_string(std::string_view s) {
  CMatrix m = pauli_by_letter(s[0]);
  for (std::size_t i = 1; i < s.size(); ++i) m = kron(m, pauli_by_letter(s[i]));
  return m;
}

struct Term {
  double coefficient = 1.0;
  bool omega_marked = false;
  std::string paulis;
};

// term := [coef '*'] ['w' '*'] pauli-string
Term parse_term(std::string_view text) {
  Term term;
  std::size_t pos = 0;
  auto skip_ws = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
  skip_ws();
  if (pos >= text.size()) throw std::invalid_argument("empty term");

  // Optional numeric coefficient. 'w' and Pauli letters cannot start a number.
  char c = text[pos];
  if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '+' || c == '-') {
    const char* begin = text.data() + pos;
    char* end = nullptr;
    term.coefficient = std::strtod(begin, &end);
    if (end == begin) throw std::invalid_argument("malformed coefficient in term '" + std::string(text) + "'");
    pos += static_cast<std::size_t>(end - begin);
    skip_ws();
    if (pos >= text.size() || text[pos] != '*')
      throw std::invalid_argument("expected '*' after coefficient in term '" + std::string(text) + "'");
    ++pos;
    skip_ws();
  }
  if (pos < text.size() && text[pos] == 'w') {
    term.omega_marked = true;
    ++pos;
    skip_ws();
    if (pos >= text.size() || text[pos] != '*')
      throw std::invalid_argument("expected '*' after 'w' in term '" + std::string(text) + "'");
    ++pos;
    skip_ws();
  }
  while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) {
    term.paulis.push_back(text[pos]);
    ++pos;
  }
  skip_ws();
  if (pos != text.size()) throw std::invalid_argument("trailing input in term '" + std::string(text) + "'");
  if (term.paulis.empty()) throw std::invalid_argument("term '" + std::string(text) + "' has no Pauli string");
  return term;
}

}  // namespace

PauliExpr parse_pauli_expr(std::string_view text) {
  // Split on top-level + / - separators. A sign right after 'e', 'E' or '*'
  // belongs to a coefficient ("1e-3*XI"); a sign before any payload is the
  // leading sign of the first term.
  std::vector<std::pair<std::string, double>> raw_terms;  // text, sign
  std::string current;
  double sign = 1.0;
  auto last_nonspace = [](const std::string& s) -> char {
    for (std::size_t j = s.size(); j-- > 0;)
      if (!std::isspace(static_cast<unsigned char>(s[j]))) return s[j];
    return 0;
  };
  for (char c : text) {
    if (c == '+' || c == '-') {
      char prev = last_nonspace(current);
      if (prev == 0) {
        if (c == '-') sign = -sign;
        continue;
      }
      if (prev != 'e' && prev != 'E' && prev != '*') {
        raw_terms.emplace_back(current, sign);
        current.clear();
        sign = c == '-' ? -1.0 : 1.0;
        continue;
      }
    }
    current.push_back(c);
  }
  if (last_nonspace(current) != 0) raw_terms.emplace_back(current, sign);
  if (raw_terms.empty()) throw std::invalid_argument("empty operator expression");

  PauliExpr expr;
  for (const auto& [term_text, term_sign] : raw_terms) {
    Term term = parse_term(term_text);
    CMatrix op = term_sign * term.coefficient * pauli_string(term.paulis);
    int qubits = static_cast<int>(term.paulis.size());
    if (expr.qubits == 0) {
      expr.qubits = qubits;
      Eigen::Index d = op.rows();
      expr.omega_part = CMatrix::Zero(d, d);
      expr.constant_part = CMatrix::Zero(d, d);
    } else if (qubits != expr.qubits) {
      throw std::invalid_argument("Pauli strings of unequal length in one expression");
    }
    (term.omega_marked ? expr.omega_part : expr.constant_part) += op;
  }
  return expr;
}

ParameterizedSystem parse_system(std::string_view drift,
                                 const std::vector<std::string>& controls) {
  PauliExpr d = parse_pauli_expr(drift);
  std::vector<CMatrix> ctrl_ops;
  for (const auto& c : controls) {
    PauliExpr e = parse_pauli_expr(c);
    if (e.qubits != d.qubits)
      throw std::invalid_argument("control qubit count differs from drift");
    if (e.omega_part.norm() != 0.0)
      throw std::invalid_argument("control expressions must not contain w-marked terms");
    ctrl_ops.push_back(e.constant_part);
  }
  return make_system(d.omega_part, d.constant_part, std::move(ctrl_ops));
}

}  // namespace qoc
