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

#include "core/fidelity.hpp"

#include <cmath>
#include <stdexcept>

namespace qoc {

namespace {

cxd gate_overlap(const CMatrix& u_targ, const CMatrix& u) {
  if (u_targ.rows() != u.rows() || u_targ.cols() != u.cols() || u.rows() != u.cols())
    throw std::invalid_argument("fidelity: unitaries must be square and of equal dimension");
  return (u_targ.adjoint() * u).trace() / static_cast<double>(u.rows());
}

FidelityReport report_from_overlap(cxd g, FidelityKind kind) {
  FidelityReport rep;
  rep.overlap = g;
  rep.kind = kind;
  rep.value = kind == FidelityKind::su ? g.real() : std::abs(g);
  rep.phase_defined = std::abs(g) > default_tolerances().phase_floor;
  if (rep.phase_defined) rep.phase = std::arg(g);
  return rep;
}

/// conj(g)/|g|, the e^{-i phi_g} factor of the gradient formulas.
cxd phase_factor(cxd g) {
  double mag = std::abs(g);
  if (mag <= default_tolerances().phase_floor)
    throw std::runtime_error("fidelity gradient: overlap magnitude too small, polar phase undefined");
  return std::conj(g) / mag;
}

}  // namespace

FidelityReport fidelity_su(const CMatrix& u_targ, const CMatrix& u) {
  return report_from_overlap(gate_overlap(u_targ, u), FidelityKind::su);
}

FidelityReport fidelity_psu(const CMatrix& u_targ, const CMatrix& u) {
  return report_from_overlap(gate_overlap(u_targ, u), FidelityKind::psu);
}

CMatrix spectral_derivative(const EigenDecomposition& h_eig, double scale, const CMatrix& b) {
  const Eigen::Index d = h_eig.dim();
  if (b.rows() != d || b.cols() != d)
    throw std::invalid_argument("spectral_derivative: direction dimension mismatch");
  const double gap_rel = default_tolerances().degenerate_gap_rel;

  // Direction in the eigenbasis of A = -i*scale*H.
  CMatrix b_eig = h_eig.vectors.adjoint() * b * h_eig.vectors;

  CMatrix d_eig(d, d);
  for (Eigen::Index l = 0; l < d; ++l) {
    cxd al = cxd(0, -scale * h_eig.values(l));
    for (Eigen::Index m = 0; m < d; ++m) {
      cxd am = cxd(0, -scale * h_eig.values(m));
      cxd diff = al - am;
      cxd factor;
      if (std::abs(diff) <= gap_rel * std::max(1.0, std::abs(al))) {
        factor = std::exp(al);
      } else {
        // (e^{al} - e^{am})/(al - am) in the cancellation-free product form
        // e^{(al+am)/2} * sinh(diff/2)/(diff/2).
        cxd half = 0.5 * diff;
        factor = std::exp(0.5 * (al + am)) * (std::sinh(half) / half);
      }
      d_eig(l, m) = b_eig(l, m) * factor;
    }
  }
  return h_eig.vectors * d_eig * h_eig.vectors.adjoint();
}

namespace {

/// Shared chain-rule sum: for each slice k the contribution is
/// (1/d) Re[coef * tr(Lambda_k * dX_k * X_{k-1:0})] with dX_k the spectral
/// derivative of the slice propagator in the given direction.
Eigen::VectorXd chain_rule_terms(const PropagationTrace& trace,
                                 const std::vector<CMatrix>& lambdas,
                                 const CMatrix& direction, cxd coef) {
  const std::size_t m = trace.slices.size();
  const Eigen::Index d = trace.forward.front().rows();
  const CMatrix b = cxd(0, -trace.dt) * direction;
  Eigen::VectorXd terms(static_cast<Eigen::Index>(m));
  for (std::size_t k = 0; k < m; ++k) {
    CMatrix dx = spectral_derivative(trace.slices[k].eig, trace.dt, b);
    // tr(Lambda * dX * F) via S = F * Lambda, then sum over dX .* S^T.
    CMatrix s = trace.forward[k] * lambdas[k];
    cxd tr = (dx.transpose().cwiseProduct(s)).sum();
    terms(static_cast<Eigen::Index>(k)) = (coef * tr).real() / static_cast<double>(d);
  }
  return terms;
}

}  // namespace

OmegaGradient grad_fidelity_omega(const ParameterizedSystem& sys,
                                  const PropagationTrace& trace, const CMatrix& u_targ) {
  std::vector<CMatrix> lambdas = backward_products(trace, u_targ);
  cxd g = (u_targ.adjoint() * trace.final_unitary()).trace() /
          static_cast<double>(u_targ.rows());
  OmegaGradient grad;
  grad.per_segment = chain_rule_terms(trace, lambdas, sys.h1, phase_factor(g));
  grad.value = grad.per_segment.sum();
  return grad;
}

OmegaGradient grad_fidelity_omega(const ParameterizedSystem& sys, double omega,
                                  const Pulse& pulse, const CMatrix& u_targ) {
  return grad_fidelity_omega(sys, propagate(sys, omega, pulse), u_targ);
}

Eigen::MatrixXd grad_fidelity_controls(const ParameterizedSystem& sys, double omega,
                                       const Pulse& pulse, const CMatrix& u_targ,
                                       FidelityKind kind) {
  return evaluate_member(sys, omega, pulse, u_targ, kind, true).control_gradient;
}

MemberEvaluation evaluate_member(const ParameterizedSystem& sys, double omega,
                                 const Pulse& pulse, const CMatrix& u_targ,
                                 FidelityKind kind, bool with_gradient) {
  PropagationTrace trace = propagate(sys, omega, pulse);
  MemberEvaluation eval;
  eval.report = report_from_overlap(gate_overlap(u_targ, trace.final_unitary()), kind);
  if (!with_gradient) return eval;

  std::vector<CMatrix> lambdas = backward_products(trace, u_targ);
  cxd coef = kind == FidelityKind::su ? cxd(1, 0) : phase_factor(eval.report.overlap);
  const std::size_t m = pulse.segments();
  const std::size_t c = pulse.controls();
  eval.control_gradient.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(c));
  for (std::size_t j = 0; j < c; ++j)
    eval.control_gradient.col(static_cast<Eigen::Index>(j)) =
        chain_rule_terms(trace, lambdas, sys.controls[j], coef);
  return eval;
}

EnsembleEvaluation evaluate_ensemble(const ParameterizedSystem& sys, const OmegaGrid& grid,
                                     const Pulse& pulse, const CMatrix& u_targ,
                                     FidelityKind kind, bool with_gradient) {
  EnsembleEvaluation out;
  out.members.reserve(grid.size());
  const double inv_n = 1.0 / static_cast<double>(grid.size());
  if (with_gradient)
    out.control_gradient = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(pulse.segments()),
                                                 static_cast<Eigen::Index>(pulse.controls()));
  // Fixed member order keeps the reduction deterministic.
  for (double omega : grid.points) {
    MemberEvaluation member = evaluate_member(sys, omega, pulse, u_targ, kind, with_gradient);
    out.mean_fidelity += member.report.value * inv_n;
    if (with_gradient) out.control_gradient += inv_n * member.control_gradient;
    out.members.push_back(member.report);
  }
  return out;
}

PenalizedFidelity penalized_fidelity(const ParameterizedSystem& sys, const OmegaGrid& grid,
                                     const std::vector<double>& penalty_points,
                                     const Pulse& pulse, const CMatrix& u_targ, double alpha,
                                     FidelityKind kind) {
  if (alpha < 0) throw std::invalid_argument("penalized_fidelity: alpha must be nonnegative");
  for (double p : penalty_points)
    if (p < grid.omega0 || p > grid.omega1)
      throw std::invalid_argument("penalized_fidelity: penalty point outside [omega0, omega1]");

  PenalizedFidelity out;
  EnsembleEvaluation ens = evaluate_ensemble(sys, grid, pulse, u_targ, kind, false);
  out.fidelity_term = ens.mean_fidelity;
  out.members = std::move(ens.members);
  if (!penalty_points.empty()) {
    for (double p : penalty_points) {
      out.point_gradients.push_back(grad_fidelity_omega(sys, p, pulse, u_targ).value);
      out.penalty_term += std::abs(out.point_gradients.back());
    }
    out.penalty_term /= static_cast<double>(penalty_points.size());
  }
  out.value = out.fidelity_term - alpha * out.penalty_term;
  return out;
}

}  // namespace qoc
