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

#ifndef QOC_CORE_EXPERIMENTS_HPP
#define QOC_CORE_EXPERIMENTS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/grape.hpp"
#include "core/targets.hpp"

namespace qoc {

/// Complete description of an experiment run. Every field round-trips through
/// JSON, so a persisted record can regenerate its run bit-for-bit.
struct ExperimentConfig {
  // System selection: the two built-ins or a custom Pauli-expression system.
  std::string system_id = "a";  // "a" | "b" | "custom"
  std::string variant = "eq4";  // system B drift variant: "eq4" | "sec2"
  std::string drift_expr;       // custom only, e.g. "w*XI + XX + YY + ZZ"
  std::vector<std::string> control_exprs;

  double omega0 = 1.0;
  double omega1 = 2.0;
  std::size_t n = 12;  // ensemble size

  std::string target = "cnot";  // "cnot" | "generic" | "custom"
  std::string target_name = "custom";
  CMatrix target_matrix;  // target == "custom"

  double total_time = 8.0;
  std::size_t segments = 0;  // 0 -> ceil(4T)
  double epsilon = 1e-3;
  double alpha = 0;
  std::vector<double> penalty_points;    // explicit points win over the count rule
  std::size_t penalty_point_count = 2;   // else: equally spaced grid points
  std::string fidelity = "su";           // "su" | "psu"
  std::uint64_t seed = 1;
  std::size_t restarts = 5;
  std::size_t max_evaluations = 2000;
  double init_amplitude = 1.0;
  std::size_t sweep_resolution = 201;
  bool check_controllability = true;

  // scan-tmin
  std::vector<std::size_t> n_values;  // default: {n}
  double t_min = 1.0;
  double t_max = 60.0;
  double t_coarse = 1.0;
  double t_resolution = 0.1;

  // worst-vs-time
  std::vector<double> times;

  // penalty comparison
  std::vector<double> alphas;             // default: {alpha}
  std::vector<std::size_t> point_counts;  // default: {penalty_point_count}
  std::vector<std::size_t> baseline_n;    // increased-N baselines, default {16, 20}

  // sweep over an existing pulse
  std::string pulse_csv;
};

ParameterizedSystem system_from_config(const ExperimentConfig& config);
TargetGate target_from_config(const ExperimentConfig& config);
FidelityKind fidelity_from_config(const ExperimentConfig& config);

/// Strict parser: unknown keys raise std::invalid_argument, missing keys take
/// the defaults above.
ExperimentConfig config_from_json(const nlohmann::json& value);
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Error curve of one pulse across the parameter interval: the evaluation grid
/// is `resolution` uniform points over [omega0, omega1] merged with the
/// optimized grid points, so the worst error covers both.
struct SweepCurve {
  std::vector<double> omegas;
  std::vector<double> errors;
  double worst_error = 0;
  std::vector<double> grid_point_errors;  // at grid.points, in grid order
};

SweepCurve omega_sweep(const ParameterizedSystem& sys, const OmegaGrid& grid,
                       const Pulse& pulse, const CMatrix& target, std::size_t resolution,
                       FidelityKind kind);

/// One attempted optimization inside a minimum-time search.
struct MinTimeAttempt {
  double total_time = 0;
  std::size_t segments = 0;
  double achieved_infidelity = 0;
  bool reached = false;
};

struct MinTimePoint {
  std::size_t n = 0;
  std::optional<double> t_eps;  // absent when nothing in [t_min, t_max] reached epsilon
  std::vector<MinTimeAttempt> attempts;
};

/// Coarse forward search (step t_coarse) followed by bisection down to
/// t_resolution, reporting the smallest reaching T rounded up to the
/// resolution lattice.
MinTimePoint min_time_for_n(const ExperimentConfig& config, std::size_t n);

/// Runs one experiment kind ("optimize", "scan-tmin", "sweep",
/// "worst-vs-time", "penalty", "larc"), persists records under `out_dir`
/// (unless empty), and returns the run summary. Each record directory holds
/// meta.json (embedded config + results) plus pulse.csv / sweep.csv, and
/// index.jsonl in `out_dir` lists records append-only.
nlohmann::json run_experiment(const std::string& kind, const ExperimentConfig& config,
                              const std::filesystem::path& out_dir);

}  // namespace qoc

#endif
