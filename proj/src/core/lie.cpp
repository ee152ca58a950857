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

#include "core/lie.hpp"

#include <cmath>
#include <stdexcept>

namespace qoc {
namespace {

// Hermitian matrices form a real vector space of dimension m^2. The flat
// encoding below (diagonal, then sqrt(2)-scaled upper real/imag parts)
// preserves the Frobenius inner product, so orthonormalization can run on
// plain real vectors.
Eigen::VectorXd vec_hermitian(const CMatrix& a) {
  const Eigen::Index m = a.rows();
  Eigen::VectorXd v(m * m);
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < m; ++i) v[idx++] = a(i, i).real();
  const double root2 = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j) {
      v[idx++] = root2 * a(i, j).real();
      v[idx++] = root2 * a(i, j).imag();
    }
  return v;
}

CMatrix unvec_hermitian(const Eigen::VectorXd& v, Eigen::Index m) {
  CMatrix a(m, m);
  Eigen::Index idx = 0;
  for (Eigen::Index i = 0; i < m; ++i) a(i, i) = v[idx++];
  const double inv_root2 = 1.0 / std::sqrt(2.0);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = i + 1; j < m; ++j) {
      const double re = v[idx++] * inv_root2;
      const double im = v[idx++] * inv_root2;
      a(i, j) = cxd(re, im);
      a(j, i) = cxd(re, -im);
    }
  return a;
}

// i[A, B] for Hermitian A, B, using AB - BA = AB - (AB)^dag.
CMatrix hermitian_bracket(const CMatrix& a, const CMatrix& b) {
  const CMatrix ab = a * b;
  return cxd(0, 1) * (ab - ab.adjoint().eval());
}

// Orthonormal row-vector store with amortized growth.
class RowBasis {
 public:
  explicit RowBasis(Eigen::Index width) : rows_(0), store_(16, width) {}

  Eigen::Index rows() const { return rows_; }

  // Projects `v` orthogonal to the span (two passes for stability) and
  // returns the residual norm.
  double deflate(Eigen::VectorXd& v) const {
    for (int pass = 0; pass < 2 && rows_ > 0; ++pass) {
      const auto basis = store_.topRows(rows_);
      v.noalias() -= basis.transpose() * (basis * v);
    }
    return v.norm();
  }

  void append_unit(const Eigen::VectorXd& v) {
    if (rows_ == store_.rows()) {
      Eigen::MatrixXd bigger(store_.rows() * 2, store_.cols());
      bigger.topRows(rows_) = store_.topRows(rows_);
      store_.swap(bigger);
    }
    store_.row(rows_++) = v;
  }

 private:
  Eigen::Index rows_;
  Eigen::MatrixXd store_;
};

}  // namespace

LieAlgebraBasis generate_dla(const std::vector<CMatrix>& generators,
                             const DlaOptions& options) {
  if (generators.empty()) throw std::invalid_argument("generate_dla: no generators");
  const Eigen::Index m = generators.front().rows();
  for (const CMatrix& g : generators) {
    if (g.rows() != m || g.cols() != m)
      throw std::invalid_argument("generate_dla: generators must share one square shape");
    if (!is_hermitian(g)) throw std::invalid_argument("generate_dla: generator is not Hermitian");
  }

  const std::size_t full = static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
  const std::size_t cap =
      options.stop_at_dimension > 0 ? std::min(options.stop_at_dimension, full) : full;

  LieAlgebraBasis result;
  RowBasis basis(m * m);
  const CMatrix eye = identity(m);

  // Admits a candidate if it has an independent component; candidates below
  // the absolute zero floor are numerical noise from nearly-commuting pairs.
  const auto admit = [&](const CMatrix& candidate) {
    const double norm = frobenius_norm(candidate);
    if (norm <= options.zero_tol) return false;
    Eigen::VectorXd v = vec_hermitian(candidate);
    const double residual = basis.deflate(v);
    if (residual <= options.independence_tol * norm) return false;
    v /= residual;
    basis.append_unit(v);
    result.elements.push_back(unvec_hermitian(v, m));
    return true;
  };

  for (const CMatrix& g : generators) {
    // Trace projection keeps the algebra inside su(m) for traceless inputs
    // and makes the identity direction irrelevant either way.
    const CMatrix traceless = g - (g.trace() / static_cast<double>(m)) * eye;
    admit(traceless);
  }

  std::size_t frontier_begin = 0;
  while (frontier_begin < result.elements.size() && result.depth < options.max_depth &&
         result.elements.size() < cap) {
    ++result.depth;
    const std::size_t snapshot = result.elements.size();
    for (std::size_t f = frontier_begin; f < snapshot; ++f) {
      for (std::size_t b = 0; b < snapshot; ++b) {
        if (b == f) continue;
        admit(hermitian_bracket(result.elements[f], result.elements[b]));
        if (result.elements.size() >= cap) break;
      }
      if (result.elements.size() >= cap) break;
    }
    frontier_begin = snapshot;
  }

  // Saturated means no sweep produced anything new, or the caller-supplied
  // dimension cap (a known upper bound) was hit.
  result.saturated =
      frontier_begin >= result.elements.size() || result.elements.size() >= cap;
  return result;
}

namespace {

LarcReport report_from_basis(const LieAlgebraBasis& basis, std::size_t blocks,
                             Eigen::Index block_dim) {
  LarcReport report;
  report.dimension = basis.dimension();
  report.expected = blocks * static_cast<std::size_t>(block_dim * block_dim - 1);
  report.controllable = basis.saturated && report.dimension == report.expected;
  report.depth = basis.depth;
  report.saturated = basis.saturated;
  return report;
}

}  // namespace

LarcReport larc_check(const ParameterizedSystem& system, double omega,
                      const DlaOptions& options) {
  std::vector<CMatrix> generators;
  generators.push_back(system.drift(omega));
  for (const CMatrix& c : system.controls) generators.push_back(c);
  DlaOptions opts = options;
  if (opts.stop_at_dimension == 0)
    opts.stop_at_dimension = static_cast<std::size_t>(system.dim * system.dim - 1);
  return report_from_basis(generate_dla(generators, opts), 1, system.dim);
}

LarcReport larc_check(const EnsembleSystem& ensemble, const DlaOptions& options) {
  std::vector<CMatrix> generators;
  generators.push_back(ensemble.lifted_drift);
  for (const CMatrix& c : ensemble.lifted_controls) generators.push_back(c);
  const std::size_t blocks = ensemble.grid.size();
  const Eigen::Index d = ensemble.base.dim;

  // blocks * (d^2 - 1) bounds the closure only when every block is traceless
  // (algebra inside su(d) per member); otherwise run to saturation.
  const auto traceless = [](const CMatrix& m) {
    return std::abs(m.trace()) <= 1e-10 * (1.0 + frobenius_norm(m));
  };
  bool per_block_traceless = traceless(ensemble.base.h1) && traceless(ensemble.base.h2);
  for (const CMatrix& c : ensemble.base.controls)
    per_block_traceless = per_block_traceless && traceless(c);

  DlaOptions opts = options;
  if (opts.stop_at_dimension == 0 && per_block_traceless)
    opts.stop_at_dimension = blocks * static_cast<std::size_t>(d * d - 1);
  return report_from_basis(generate_dla(generators, opts), blocks, d);
}

}  // namespace qoc
