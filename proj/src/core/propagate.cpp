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

#include "core/propagate.hpp"

#include <cmath>
#include <stdexcept>

namespace qoc {

Pulse make_pulse(double total_time, Eigen::MatrixXd amplitudes) {
  if (total_time <= 0) throw std::invalid_argument("make_pulse: total_time must be positive");
  if (amplitudes.rows() == 0) throw std::invalid_argument("make_pulse: need at least one segment");
  if (!amplitudes.allFinite()) throw std::invalid_argument("make_pulse: amplitudes must be finite");
  return Pulse{total_time, std::move(amplitudes)};
}

std::size_t default_segments(double total_time) {
  return static_cast<std::size_t>(std::ceil(4.0 * total_time));
}

SegmentPropagator segment_propagator(const ParameterizedSystem& sys, double omega,
                                     const Eigen::VectorXd& amps, double dt) {
  if (dt <= 0) throw std::invalid_argument("segment_propagator: dt must be positive");
  EigenDecomposition eig = eigh(sys.hamiltonian(omega, amps));
  CMatrix unitary = expm_from_eig(eig, dt);
  return SegmentPropagator{std::move(eig), std::move(unitary)};
}

PropagationTrace propagate(const ParameterizedSystem& sys, double omega, const Pulse& pulse) {
  if (pulse.controls() != sys.controls.size())
    throw std::invalid_argument("propagate: pulse control count does not match system");
  const std::size_t m = pulse.segments();
  const double dt = pulse.dt();
  PropagationTrace trace;
  trace.dt = dt;
  trace.slices.reserve(m);
  trace.forward.reserve(m + 1);
  trace.forward.push_back(identity(sys.dim));
  for (std::size_t k = 0; k < m; ++k) {
    trace.slices.push_back(
        segment_propagator(sys, omega, pulse.amplitudes.row(static_cast<Eigen::Index>(k)), dt));
    trace.forward.push_back(trace.slices.back().unitary * trace.forward.back());
  }
  return trace;
}

std::vector<CMatrix> backward_products(const PropagationTrace& trace, const CMatrix& u_targ) {
  const std::size_t m = trace.slices.size();
  if (u_targ.rows() != trace.forward.front().rows() || u_targ.cols() != u_targ.rows())
    throw std::invalid_argument("backward_products: target dimension mismatch");
  std::vector<CMatrix> lambdas(m);
  lambdas[m - 1] = u_targ.adjoint();
  for (std::size_t k = m - 1; k-- > 0;)
    lambdas[k] = lambdas[k + 1] * trace.slices[k + 1].unitary;
  return lambdas;
}

std::pair<double, double> duhamel_gap(const ParameterizedSystem& sys, const Pulse& pulse,
                                      double omega, double sigma) {
  CMatrix u_omega = propagate(sys, omega, pulse).final_unitary();
  CMatrix u_sigma = propagate(sys, sigma, pulse).final_unitary();
  double lhs = spectral_norm(u_omega - u_sigma);
  double rhs = pulse.total_time * std::abs(omega - sigma) * spectral_norm(sys.h1);
  return {lhs, rhs};
}

}  // namespace qoc
