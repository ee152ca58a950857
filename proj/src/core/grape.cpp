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

#include "core/grape.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "core/lbfgs.hpp"
#include "core/rng.hpp"

namespace qoc {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

StopReason reason_from_status(LbfgsStatus status) {
  switch (status) {
    case LbfgsStatus::stopped_by_callback:
      return StopReason::target_reached;
    case LbfgsStatus::gradient_small:
      return StopReason::gradient_small;
    case LbfgsStatus::line_search_fail:
      return StopReason::line_search_fail;
    case LbfgsStatus::max_evaluations:
      break;
  }
  return StopReason::max_evaluations;
}

// Minimizes 1 - f' over the flattened amplitude vector. The fidelity term's
// gradient is exact (chain rule through the slice exponentials); the penalty
// term's gradient uses central differences per amplitude.
class Objective {
 public:
  Objective(const ParameterizedSystem& sys, const OptimizeConfig& cfg, std::size_t segments)
      : sys_(sys), cfg_(cfg), segments_(segments) {}

  Pulse to_pulse(const Eigen::VectorXd& x) const {
    Eigen::MatrixXd amps =
        Eigen::Map<const Eigen::MatrixXd>(x.data(), static_cast<Eigen::Index>(segments_),
                                          static_cast<Eigen::Index>(sys_.controls.size()));
    return make_pulse(cfg_.total_time, std::move(amps));
  }

  double operator()(const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
    try {
      const Pulse pulse = to_pulse(x);
      const EnsembleEvaluation ens =
          evaluate_ensemble(sys_, cfg_.grid, pulse, cfg_.target, cfg_.kind, true);
      grad = -Eigen::Map<const Eigen::VectorXd>(ens.control_gradient.data(), x.size());

      double penalty = 0;
      if (cfg_.alpha > 0) {
        penalty = penalty_term(pulse);
        Eigen::VectorXd probe = x;
        for (Eigen::Index i = 0; i < x.size(); ++i) {
          const double h = cfg_.fd_step_scale * std::max(1.0, std::abs(x[i]));
          probe[i] = x[i] + h;
          const double up = penalty_term(to_pulse(probe));
          probe[i] = x[i] - h;
          const double down = penalty_term(to_pulse(probe));
          probe[i] = x[i];
          grad[i] += cfg_.alpha * (up - down) / (2 * h);
        }
      }

      last_fidelity_ = ens.mean_fidelity;
      last_penalty_ = penalty;
      return 1.0 - (ens.mean_fidelity - cfg_.alpha * penalty);
    } catch (const std::exception&) {
      // Undefined PSU phase or non-finite trial amplitudes: reject the point.
      grad.setZero();
      last_fidelity_ = -kInf;
      last_penalty_ = kInf;
      return kInf;
    }
  }

  double penalty_term(const Pulse& pulse) const {
    double sum = 0;
    for (double point : cfg_.penalty_points)
      sum += std::abs(grad_fidelity_omega(sys_, point, pulse, cfg_.target).value);
    return sum / static_cast<double>(cfg_.penalty_points.size());
  }

  double last_fidelity() const { return last_fidelity_; }
  double last_penalty() const { return last_penalty_; }

 private:
  const ParameterizedSystem& sys_;
  const OptimizeConfig& cfg_;
  std::size_t segments_;
  double last_fidelity_ = 0;
  double last_penalty_ = 0;
};

void validate(const ParameterizedSystem& sys, const OptimizeConfig& cfg) {
  if (cfg.grid.points.empty()) throw std::invalid_argument("grape: empty omega grid");
  if (cfg.total_time <= 0 || !std::isfinite(cfg.total_time))
    throw std::invalid_argument("grape: total_time must be positive");
  if (cfg.epsilon <= 0) throw std::invalid_argument("grape: epsilon must be positive");
  if (cfg.alpha < 0) throw std::invalid_argument("grape: alpha must be non-negative");
  if (cfg.restarts == 0) throw std::invalid_argument("grape: need at least one start");
  if (sys.controls.empty()) throw std::invalid_argument("grape: system has no controls");
  if (cfg.target.rows() != sys.dim || cfg.target.cols() != sys.dim)
    throw std::invalid_argument("grape: target dimension does not match the system");
  if (!is_unitary(cfg.target)) throw std::invalid_argument("grape: target is not unitary");
  if (!(cfg.init_amplitude >= 0))
    throw std::invalid_argument("grape: init_amplitude must be non-negative");
}

}  // namespace

const char* stop_reason_name(StopReason reason) {
  switch (reason) {
    case StopReason::target_reached:
      return "target_reached";
    case StopReason::max_evaluations:
      return "max_evaluations";
    case StopReason::line_search_fail:
      return "line_search_fail";
    case StopReason::gradient_small:
      return "gradient_small";
  }
  return "unknown";
}

Pulse random_initial_pulse(std::uint64_t seed, std::size_t segments, std::size_t controls,
                           double total_time, double amplitude) {
  SplitMix64 rng(seed);
  Eigen::MatrixXd amps(static_cast<Eigen::Index>(segments), static_cast<Eigen::Index>(controls));
  for (Eigen::Index k = 0; k < amps.rows(); ++k)
    for (Eigen::Index j = 0; j < amps.cols(); ++j) amps(k, j) = rng.uniform(-amplitude, amplitude);
  return make_pulse(total_time, std::move(amps));
}

OptimizeResult grape_optimize(const ParameterizedSystem& sys, const OptimizeConfig& config) {
  OptimizeConfig cfg = config;
  validate(sys, cfg);
  const std::size_t segments = cfg.segments > 0 ? cfg.segments : default_segments(cfg.total_time);
  cfg.segments = segments;
  if (cfg.alpha > 0 && cfg.penalty_points.empty())
    cfg.penalty_points = {cfg.grid.omega0, cfg.grid.omega1};
  if (cfg.initial_pulse) {
    if (cfg.initial_pulse->segments() != segments ||
        cfg.initial_pulse->controls() != sys.controls.size() ||
        cfg.initial_pulse->total_time != cfg.total_time)
      throw std::invalid_argument("grape: initial pulse does not match the configuration");
    cfg.restarts = 1;
  }

  OptimizeResult result;
  if (cfg.check_controllability)
    result.larc = larc_check(lift_ensemble(sys, cfg.grid));

  LbfgsParams params;
  params.max_evaluations = cfg.max_evaluations;

  Objective objective(sys, cfg, segments);
  const std::size_t n_controls = sys.controls.size();

  double best_f = kInf;
  LbfgsResult best_run;
  std::vector<double> best_hist_fid, best_hist_pen;

  for (std::size_t r = 0; r < cfg.restarts; ++r) {
    const std::uint64_t run_seed = cfg.seed + r;
    const Pulse start =
        cfg.initial_pulse ? *cfg.initial_pulse
                          : random_initial_pulse(run_seed, segments, n_controls, cfg.total_time,
                                                 cfg.init_amplitude);
    const Eigen::VectorXd x0 =
        Eigen::Map<const Eigen::VectorXd>(start.amplitudes.data(), start.amplitudes.size());

    std::vector<double> hist_fid, hist_pen;
    const auto stop = [&](double f) {
      hist_fid.push_back(objective.last_fidelity());
      hist_pen.push_back(objective.last_penalty());
      return f <= cfg.epsilon;
    };

    LbfgsResult run = lbfgs_minimize(std::ref(objective), x0, params, stop);

    StartRecord record;
    record.seed = run_seed;
    record.objective = run.f;
    record.reason = reason_from_status(run.status);
    record.iterations = run.iterations;
    record.evaluations = run.evaluations;
    result.starts.push_back(record);
    result.evaluations += run.evaluations;

    if (run.f < best_f || result.starts.size() == 1) {
      best_f = run.f;
      best_run = std::move(run);
      best_hist_fid = std::move(hist_fid);
      best_hist_pen = std::move(hist_pen);
      result.restart_index = r;
    }
    if (record.reason == StopReason::target_reached) break;
  }

  result.pulse = objective.to_pulse(best_run.x);
  result.reason = reason_from_status(best_run.status);
  result.iterations = best_run.iterations;
  result.history = std::move(best_run.history);
  result.history_fidelity = std::move(best_hist_fid);
  result.history_penalty = std::move(best_hist_pen);

  // Honest final numbers: re-propagate the winning pulse from scratch.
  const PenalizedFidelity final_eval =
      penalized_fidelity(sys, cfg.grid, cfg.alpha > 0 ? cfg.penalty_points : std::vector<double>{},
                         result.pulse, cfg.target, cfg.alpha, cfg.kind);
  result.objective = final_eval.value;
  result.infidelity = 1.0 - final_eval.value;
  result.fidelity_term = final_eval.fidelity_term;
  result.penalty_term = final_eval.penalty_term;
  result.member_infidelities.reserve(final_eval.members.size());
  for (const FidelityReport& member : final_eval.members)
    result.member_infidelities.push_back(1.0 - member.value);
  result.target_reached = result.infidelity <= cfg.epsilon;
  return result;
}

OptimizeResult reoptimize_with_penalty(const ParameterizedSystem& sys,
                                       const OptimizeConfig& base_config,
                                       const Pulse& base_pulse, double alpha,
                                       std::vector<double> penalty_points) {
  if (alpha < 0) throw std::invalid_argument("reoptimize_with_penalty: alpha must be >= 0");
  OptimizeConfig cfg = base_config;
  cfg.alpha = alpha;
  cfg.penalty_points = std::move(penalty_points);
  cfg.segments = base_pulse.segments();
  cfg.total_time = base_pulse.total_time;
  cfg.initial_pulse = base_pulse;
  cfg.restarts = 1;
  return grape_optimize(sys, cfg);
}

}  // namespace qoc
