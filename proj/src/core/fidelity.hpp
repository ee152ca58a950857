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

#ifndef QOC_CORE_FIDELITY_HPP
#define QOC_CORE_FIDELITY_HPP

#include <vector>

#include "core/propagate.hpp"

namespace qoc {

enum class FidelityKind { su, psu };

/// Gate overlap g = tr(U_targ^dag U) / d together with the derived fidelity:
/// SU is Re(g) (phase-sensitive), PSU is |g| (phase-insensitive). The polar
/// phase satisfies e^{-i phase} = conj(g)/|g| and is flagged undefined when
/// |g| is below the phase floor.
struct FidelityReport {
  double value = 0;
  cxd overlap{0, 0};
  double phase = 0;
  bool phase_defined = false;
  FidelityKind kind = FidelityKind::su;
};

FidelityReport fidelity_su(const CMatrix& u_targ, const CMatrix& u);
FidelityReport fidelity_psu(const CMatrix& u_targ, const CMatrix& u);

/// Directional derivative of the matrix exponential at a skew-Hermitian
/// point: given the eigendecomposition of Hermitian H and a direction B,
/// returns d/dx exp(-i*scale*H + x*B) at x = 0. In the eigenbasis of
/// A = -i*scale*H with eigenvalues a_v = -i*scale*lambda_v the entries are
///   <l|B|m> * e^{a_l}                          for coinciding eigenvalues,
///   <l|B|m> * (e^{a_l} - e^{a_m})/(a_l - a_m)  otherwise,
/// with the coincidence case triggered at relative gap degenerate_gap_rel.
CMatrix spectral_derivative(const EigenDecomposition& h_eig, double scale, const CMatrix& b);

/// d f_PSU / d omega decomposed into one contribution per time slice;
/// `value` is their sum.
struct OmegaGradient {
  double value = 0;
  Eigen::VectorXd per_segment;
};

/// Exact gradient of the phase-insensitive fidelity with respect to the
/// unknown drift coefficient. Throws when |g| is below the phase floor.
OmegaGradient grad_fidelity_omega(const ParameterizedSystem& sys, double omega,
                                  const Pulse& pulse, const CMatrix& u_targ);

/// Same, reusing an existing propagation of the pulse at this omega.
OmegaGradient grad_fidelity_omega(const ParameterizedSystem& sys,
                                  const PropagationTrace& trace, const CMatrix& u_targ);

/// Exact gradient of the chosen fidelity with respect to every control
/// amplitude, shaped like the pulse's amplitude matrix.
Eigen::MatrixXd grad_fidelity_controls(const ParameterizedSystem& sys, double omega,
                                       const Pulse& pulse, const CMatrix& u_targ,
                                       FidelityKind kind);

/// Fidelity and control gradient from one propagation.
struct MemberEvaluation {
  FidelityReport report;
  Eigen::MatrixXd control_gradient;  // empty when not requested
};

MemberEvaluation evaluate_member(const ParameterizedSystem& sys, double omega,
                                 const Pulse& pulse, const CMatrix& u_targ,
                                 FidelityKind kind, bool with_gradient);

/// Mean fidelity over grid members plus, when requested, the gradient of the
/// mean with respect to the amplitudes. Member order follows the grid.
struct EnsembleEvaluation {
  double mean_fidelity = 0;
  std::vector<FidelityReport> members;
  Eigen::MatrixXd control_gradient;
};

EnsembleEvaluation evaluate_ensemble(const ParameterizedSystem& sys, const OmegaGrid& grid,
                                     const Pulse& pulse, const CMatrix& u_targ,
                                     FidelityKind kind, bool with_gradient);

/// Penalized fidelity f' = mean_grid f - alpha * mean_points |d f_PSU / d omega|.
struct PenalizedFidelity {
  double value = 0;
  double fidelity_term = 0;  // mean fidelity over the grid
  double penalty_term = 0;   // mean |omega-gradient| over the penalty points
  std::vector<FidelityReport> members;
  std::vector<double> point_gradients;  // d f_PSU / d omega at each penalty point
};

PenalizedFidelity penalized_fidelity(const ParameterizedSystem& sys, const OmegaGrid& grid,
                                     const std::vector<double>& penalty_points,
                                     const Pulse& pulse, const CMatrix& u_targ, double alpha,
                                     FidelityKind kind = FidelityKind::su);

}  // namespace qoc

#endif
