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

#include "core/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qoc {

const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

bool all_finite(const CMatrix& m) {
  return m.allFinite();
}

bool is_hermitian(const CMatrix& m, double rel) {
  if (m.rows() != m.cols()) return false;
  double scale = m.norm();
  if (scale == 0.0) return true;
  return (m - m.adjoint()).norm() <= rel * scale;
}

bool is_unitary(const CMatrix& m, double rel) {
  if (m.rows() != m.cols()) return false;
  Eigen::Index d = m.rows();
  CMatrix gram = m.adjoint() * m;
  gram -= CMatrix::Identity(d, d);
  return gram.norm() <= rel * std::sqrt(static_cast<double>(d));
}

CMatrix pauli_i() {
  CMatrix m(2, 2);
  m << 1, 0, 0, 1;
  return m;
}

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << cxd(0, 0), cxd(0, -1), cxd(0, 1), cxd(0, 0);
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix identity(Eigen::Index d) {
  return CMatrix::Identity(d, d);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw std::invalid_argument("commutator: operands must be square and of equal dimension");
  return a * b - b * a;
}

double frobenius_norm(const CMatrix& m) {
  return m.norm();
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues()(0);
}

EigenDecomposition eigh(const CMatrix& h) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("eigh: matrix must be square");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigh: eigensolver failed to converge");
  return EigenDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

CMatrix expm_from_eig(const EigenDecomposition& eig, double scale) {
  Eigen::Index d = eig.dim();
  Eigen::VectorXcd phases(d);
  for (Eigen::Index v = 0; v < d; ++v)
    phases(v) = std::exp(cxd(0, -scale * eig.values(v)));
  return eig.vectors * phases.asDiagonal() * eig.vectors.adjoint();
}

CMatrix expm_hermitian(const CMatrix& h, double scale) {
  return expm_from_eig(eigh(h), scale);
}

CMatrix unitary_power(const CMatrix& m, std::uint64_t k) {
  CMatrix acc = CMatrix::Identity(m.rows(), m.cols());
  CMatrix base = m;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return acc;
}

double trotter_error(const CMatrix& a, const CMatrix& b, double t, std::uint64_t n) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("trotter_error: dimension mismatch");
  if (n == 0) throw std::invalid_argument("trotter_error: n must be positive");
  double tn = t / static_cast<double>(n);
  CMatrix step = expm_hermitian(a, tn) * expm_hermitian(b, tn);
  CMatrix product = unitary_power(step, n);
  CMatrix target = expm_hermitian(a + b, t);
  return spectral_norm(product - target);
}

double commutator_limit_error(const CMatrix& a, const CMatrix& b, double t,
                              std::uint64_t n) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("commutator_limit_error: dimension mismatch");
  if (n == 0) throw std::invalid_argument("commutator_limit_error: n must be positive");
  double tn = t / static_cast<double>(n);
  // Group commutator of e^{iAt/n} and e^{iBt/n}; the generators are the
  // skew-Hermitian -iA, -iB, so the n^2 power tends to e^{[-iA,-iB]t^2}
  // = e^{-[A,B]t^2}.
  CMatrix step = expm_hermitian(a, -tn) * expm_hermitian(b, -tn) *
                 expm_hermitian(a, tn) * expm_hermitian(b, tn);
  CMatrix product = unitary_power(step, n * n);
  CMatrix gen = cxd(0, -1) * commutator(a, b);  // Hermitian
  CMatrix target = expm_hermitian(gen, t * t);
  return spectral_norm(product - target);
}

std::optional<double> recurrence_scan(const CMatrix& h, double eps, double t_min,
                                      double t_max, double step) {
  if (eps <= 0 || t_min < 0 || step <= 0)
    throw std::invalid_argument("recurrence_scan: require eps > 0, t_min >= 0, step > 0");
  EigenDecomposition eig = eigh(h);
  // I - e^{-iHt} is normal, so its spectral norm is max_v |1 - e^{-i lambda_v t}|.
  auto deviation = [&](double t) {
    double worst = 0.0;
    for (Eigen::Index v = 0; v < eig.values.size(); ++v)
      worst = std::max(worst, std::abs(1.0 - std::exp(cxd(0, -eig.values(v) * t))));
    return worst;
  };
  std::uint64_t steps = static_cast<std::uint64_t>((t_max - t_min) / step);
  for (std::uint64_t k = 0; k <= steps; ++k) {
    double t = t_min + static_cast<double>(k) * step;
    if (deviation(t) < eps) return t;
  }
  return std::nullopt;
}

}  // namespace qoc
