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

#ifndef QOC_CORE_LIE_HPP
#define QOC_CORE_LIE_HPP

#include <cstddef>
#include <vector>

#include "core/linalg.hpp"
#include "core/systems.hpp"

namespace qoc {

/// Options for the dynamical-Lie-algebra closure. Elements are Hermitian and
/// the bracket is (A, B) -> i[A, B], which keeps everything Hermitian.
struct DlaOptions {
  /// A bracket counts as a new direction if its component orthogonal to the
  /// current basis exceeds this fraction of its own norm.
  double independence_tol = 1e-8;
  /// Brackets with Frobenius norm at or below this are treated as zero.
  double zero_tol = 1e-12;
  /// Maximum number of breadth-first sweeps (bracket nesting depth).
  std::size_t max_depth = 20;
  /// Stop early once this many independent elements are found (0 = never).
  /// Only sound when the caller knows it is a true upper bound.
  std::size_t stop_at_dimension = 0;
};

struct LieAlgebraBasis {
  std::vector<CMatrix> elements;  // orthonormal under the Frobenius inner product
  std::size_t depth = 0;          // sweeps performed
  bool saturated = false;         // closure (or the dimension cap) was reached
  std::size_t dimension() const { return elements.size(); }
};

/// Generates the real Lie algebra spanned by the (Hermitian, trace-projected)
/// generators under i[.,.]. Throws std::invalid_argument on non-Hermitian or
/// mismatched generators.
LieAlgebraBasis generate_dla(const std::vector<CMatrix>& generators,
                             const DlaOptions& options = {});

/// Lie-algebra-rank controllability report. `expected` is blocks * (d^2 - 1),
/// the dimension of one su(d) summand per ensemble member.
struct LarcReport {
  std::size_t dimension = 0;
  std::size_t expected = 0;
  bool controllable = false;
  std::size_t depth = 0;
  bool saturated = false;
};

/// Rank check for a single system at a fixed drift parameter; generators are
/// the drift at `omega` plus the control Hamiltonians.
LarcReport larc_check(const ParameterizedSystem& system, double omega,
                      const DlaOptions& options = {});

/// Rank check for the block-diagonal ensemble lift; generators are the lifted
/// drift and lifted controls.
LarcReport larc_check(const EnsembleSystem& ensemble, const DlaOptions& options = {});

}  // namespace qoc

#endif
