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

#ifndef QOC_CORE_PROPAGATE_HPP
#define QOC_CORE_PROPAGATE_HPP

#include <utility>
#include <vector>

#include "core/systems.hpp"

namespace qoc {

/// Piecewise-constant pulse: M equal-duration segments, one amplitude per
/// control per segment (rows index segments).
struct Pulse {
  double total_time = 0;
  Eigen::MatrixXd amplitudes;  // M x controls

  std::size_t segments() const { return static_cast<std::size_t>(amplitudes.rows()); }
  std::size_t controls() const { return static_cast<std::size_t>(amplitudes.cols()); }
  double dt() const { return total_time / static_cast<double>(segments()); }
};

Pulse make_pulse(double total_time, Eigen::MatrixXd amplitudes);

/// Segment count giving dt <= 0.25: M = ceil(4T).
std::size_t default_segments(double total_time);

/// One time slice: the propagator exp(-i dt H) together with the
/// eigendecomposition of the slice Hamiltonian H, kept for gradient reuse.
struct SegmentPropagator {
  EigenDecomposition eig;
  CMatrix unitary;
};

SegmentPropagator segment_propagator(const ParameterizedSystem& sys, double omega,
                                     const Eigen::VectorXd& amps, double dt);

/// Full piecewise-constant evolution. forward[k] is the product of the first
/// k segment propagators (forward[0] = I), so forward[M] is U(T).
struct PropagationTrace {
  std::vector<SegmentPropagator> slices;
  std::vector<CMatrix> forward;

  const CMatrix& final_unitary() const { return forward.back(); }
  double dt = 0;
};

PropagationTrace propagate(const ParameterizedSystem& sys, double omega, const Pulse& pulse);

/// Partial products from the target side: entry k-1 (for k = 1..M) is
/// U_targ^dag X_M X_{M-1} ... X_{k+1}; entry M-1 is U_targ^dag alone.
std::vector<CMatrix> backward_products(const PropagationTrace& trace, const CMatrix& u_targ);

/// Propagates the same pulse at drift coefficients omega and sigma and
/// returns (||U_omega(T) - U_sigma(T)||_2, T * |omega-sigma| * ||h1||_2).
/// The first is always bounded by the second.
std::pair<double, double> duhamel_gap(const ParameterizedSystem& sys, const Pulse& pulse,
                                      double omega, double sigma);

}  // namespace qoc

#endif
