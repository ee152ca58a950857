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

#ifndef QOC_CORE_GRAPE_HPP
#define QOC_CORE_GRAPE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "core/fidelity.hpp"
#include "core/lie.hpp"
#include "core/propagate.hpp"

namespace qoc {

enum class StopReason { target_reached, max_evaluations, line_search_fail, gradient_small };

const char* stop_reason_name(StopReason reason);

/// Configuration for ensemble GRAPE. The objective maximized is
///   f' = mean_grid fidelity - alpha * mean_points |d f_PSU / d omega|,
/// and the optimizer stops early once 1 - f' <= epsilon.
struct OptimizeConfig {
  OmegaGrid grid;
  CMatrix target;  // exactly unitary; align the phase first for SU objectives
  FidelityKind kind = FidelityKind::su;
  double total_time = 0;
  std::size_t segments = 0;  // 0 -> default_segments(total_time)
  double epsilon = 1e-3;
  double alpha = 0;
  std::vector<double> penalty_points;  // default: grid endpoints
  std::uint64_t seed = 1;
  std::size_t restarts = 5;
  std::size_t max_evaluations = 2000;  // objective evaluations per start
  double init_amplitude = 1.0;         // random starts draw from [-a, a]
  std::optional<Pulse> initial_pulse;  // warm start; forces a single start
  bool check_controllability = true;
  double fd_step_scale = 1e-6;  // relative step for the penalty-term gradient
};

struct StartRecord {
  std::uint64_t seed = 0;
  double objective = 0;  // final 1 - f' for this start
  StopReason reason = StopReason::max_evaluations;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
};

struct OptimizeResult {
  Pulse pulse;
  // Recomputed from the returned pulse, not taken from optimizer state.
  double objective = 0;   // f'
  double infidelity = 0;  // 1 - f'
  double fidelity_term = 0;
  double penalty_term = 0;
  std::vector<double> member_infidelities;
  bool target_reached = false;
  StopReason reason = StopReason::max_evaluations;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;  // summed over starts
  std::size_t restart_index = 0;
  // Winning start, one entry after the initial evaluation and per accepted step.
  std::vector<double> history;           // 1 - f'
  std::vector<double> history_fidelity;  // fidelity term
  std::vector<double> history_penalty;   // penalty term
  std::optional<LarcReport> larc;
  std::vector<StartRecord> starts;
};

/// Uniform amplitudes in [-amplitude, amplitude], drawn segment-major from a
/// SplitMix64 stream seeded with `seed`.
Pulse random_initial_pulse(std::uint64_t seed, std::size_t segments, std::size_t controls,
                           double total_time, double amplitude);

/// Multi-start L-BFGS (strong Wolfe) over piecewise-constant amplitudes.
/// Restart r uses seed + r; the best final objective wins, with an early exit
/// once some start reaches epsilon. Throws std::invalid_argument on malformed
/// configuration.
OptimizeResult grape_optimize(const ParameterizedSystem& sys, const OptimizeConfig& config);

/// Warm restart of a finished optimization with the penalty switched on:
/// same system and grid, initial pulse taken from `base_pulse`, single start.
OptimizeResult reoptimize_with_penalty(const ParameterizedSystem& sys,
                                       const OptimizeConfig& base_config,
                                       const Pulse& base_pulse, double alpha,
                                       std::vector<double> penalty_points = {});

}  // namespace qoc

#endif
