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

// Command-line front-end for the robust-control experiments. All work happens
// behind the C API in libqoc; this file only assembles the JSON config from
// flags and maps summaries to exit codes:
//   0 success, 1 runtime failure, 2 invalid config,
//   3 ensemble not controllable (larc), 4 target not reached (optimize,
//   scan-tmin with no admissible time).

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qoc/qoc.h"

namespace {

using nlohmann::json;

struct Options {
  std::string config_path;
  std::string out_dir = "runs";
  std::string system, variant, target, fidelity, pulse, drift;
  std::vector<std::string> controls;
  double omega0 = 0, omega1 = 0, t = 0, eps = 0, alpha = 0, init_amplitude = 0;
  double t_min = 0, t_max = 0, t_coarse = 0, t_resolution = 0;
  std::vector<double> times, alphas, penalty_points;
  std::vector<std::uint64_t> n_values, point_counts, baseline_n;
  std::uint64_t n = 0, m = 0, restarts = 0, max_evals = 0, resolution = 0, point_count = 0;
  std::uint64_t seed = 0;
  bool no_larc_check = false;

  std::map<std::string, CLI::Option*> given;
};

void add_flags(CLI::App& cmd, Options& o) {
  auto& g = o.given;
  g["config"] = cmd.add_option("--config", o.config_path,
                               "JSON config file; explicit flags override its keys");
  g["out"] = cmd.add_option("--out", o.out_dir, "Results directory (default: runs)");
  g["system"] = cmd.add_option("--system", o.system, "System: a, b, or custom");
  g["variant"] = cmd.add_option("--variant", o.variant, "System B drift variant: eq4 or sec2");
  g["target"] = cmd.add_option("--target", o.target,
                               "Target gate: cnot, generic, or a JSON file path");
  g["drift"] = cmd.add_option("--drift", o.drift,
                              "Custom drift Pauli expression, e.g. 'w*XI + XX + YY + ZZ'");
  g["control"] = cmd.add_option("--control", o.controls,
                                "Custom control expression (repeatable)");
  g["omega0"] = cmd.add_option("--omega0", o.omega0, "Interval lower end (default 1)");
  g["omega1"] = cmd.add_option("--omega1", o.omega1, "Interval upper end (default 2)");
  g["n"] = cmd.add_option("--n", o.n, "Ensemble size (default 12)");
  g["t"] = cmd.add_option("--t", o.t, "Total control time");
  g["m"] = cmd.add_option("--m", o.m, "Segments (default: ceil(4T))");
  g["eps"] = cmd.add_option("--eps", o.eps, "Target infidelity (default 1e-3)");
  g["alpha"] = cmd.add_option("--alpha", o.alpha, "Penalty weight (default 0)");
  g["points"] = cmd.add_option("--points", o.penalty_points,
                               "Explicit penalty points (space separated)");
  g["point-count"] = cmd.add_option("--point-count", o.point_count,
                                    "Penalty points chosen from the grid (default 2)");
  g["fidelity"] = cmd.add_option("--fidelity", o.fidelity, "Fidelity kind: su or psu");
  g["seed"] = cmd.add_option("--seed", o.seed, "Base RNG seed (default 1)");
  g["restarts"] = cmd.add_option("--restarts", o.restarts, "Random restarts (default 5)");
  g["max-evals"] = cmd.add_option("--max-evals", o.max_evals,
                                  "Objective evaluations per start (default 2000)");
  g["init-amplitude"] = cmd.add_option("--init-amplitude", o.init_amplitude,
                                       "Random start amplitude scale (default 1)");
  g["resolution"] = cmd.add_option("--resolution", o.resolution,
                                   "Sweep evaluation points (default 201)");
  g["no-larc-check"] =
      cmd.add_flag("--no-larc-check", o.no_larc_check, "Skip the controllability pre-check");
  g["n-values"] = cmd.add_option("--n-values", o.n_values, "Ensemble sizes for scan-tmin");
  g["t-min"] = cmd.add_option("--t-min", o.t_min, "Scan range start (default 1)");
  g["t-max"] = cmd.add_option("--t-max", o.t_max, "Scan range end (default 60)");
  g["t-coarse"] = cmd.add_option("--t-coarse", o.t_coarse, "Coarse scan step (default 1)");
  g["t-resolution"] =
      cmd.add_option("--t-resolution", o.t_resolution, "Bisection resolution (default 0.1)");
  g["times"] = cmd.add_option("--times", o.times, "Control times for worst-vs-time");
  g["alphas"] = cmd.add_option("--alphas", o.alphas, "Penalty weights for penalty runs");
  g["point-counts"] = cmd.add_option("--point-counts", o.point_counts,
                                     "Penalty point counts for penalty runs");
  g["baseline-n"] = cmd.add_option("--baseline-n", o.baseline_n,
                                   "Increased-N baselines for penalty runs");
  g["pulse"] = cmd.add_option("--pulse", o.pulse, "Pulse CSV to sweep");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json value;
  in >> value;
  return value;
}

// Sweeping an existing record: pick up grid/system/target defaults from the
// meta.json sitting next to the pulse CSV, when there is one.
void merge_pulse_meta(json& cfg, const std::string& pulse_path) {
  const std::filesystem::path meta_path =
      std::filesystem::path(pulse_path).parent_path() / "meta.json";
  std::error_code ec;
  if (!std::filesystem::exists(meta_path, ec)) return;
  const json meta = read_json_file(meta_path.string());
  if (meta.contains("config")) {
    json base = meta["config"];
    if (meta.contains("results")) {
      const json& results = meta["results"];
      if (results.contains("t")) base["t"] = results["t"];
      if (results.contains("n")) base["n"] = results["n"];
      if (results.contains("segments")) base["m"] = results["segments"];
    }
    base.erase("times");
    base.erase("n_values");
    for (auto& [key, value] : base.items())
      if (!cfg.contains(key)) cfg[key] = value;
  }
}

json build_config(const Options& o, const std::string& kind) {
  json cfg = json::object();
  if (o.given.at("config")->count()) cfg = read_json_file(o.config_path);

  const auto set_if = [&](const char* flag, const char* key, const auto& value) {
    if (o.given.at(flag)->count()) cfg[key] = value;
  };
  set_if("system", "system", o.system);
  set_if("variant", "variant", o.variant);
  set_if("drift", "drift", o.drift);
  set_if("control", "controls", o.controls);
  set_if("omega0", "omega0", o.omega0);
  set_if("omega1", "omega1", o.omega1);
  set_if("n", "n", o.n);
  set_if("t", "t", o.t);
  set_if("m", "m", o.m);
  set_if("eps", "eps", o.eps);
  set_if("alpha", "alpha", o.alpha);
  set_if("points", "penalty_points", o.penalty_points);
  set_if("point-count", "penalty_point_count", o.point_count);
  set_if("fidelity", "fidelity", o.fidelity);
  set_if("seed", "seed", o.seed);
  set_if("restarts", "restarts", o.restarts);
  set_if("max-evals", "max_evals", o.max_evals);
  set_if("init-amplitude", "init_amplitude", o.init_amplitude);
  set_if("resolution", "sweep_resolution", o.resolution);
  set_if("n-values", "n_values", o.n_values);
  set_if("t-min", "t_min", o.t_min);
  set_if("t-max", "t_max", o.t_max);
  set_if("t-coarse", "t_coarse", o.t_coarse);
  set_if("t-resolution", "t_resolution", o.t_resolution);
  set_if("times", "times", o.times);
  set_if("alphas", "alphas", o.alphas);
  set_if("point-counts", "point_counts", o.point_counts);
  set_if("baseline-n", "baseline_n", o.baseline_n);
  set_if("pulse", "pulse_csv", o.pulse);
  if (o.no_larc_check) cfg["check_larc"] = false;

  // --target above is either a named gate or a path to {"name", "matrix"}.
  if (o.given.at("target")->count()) {
    if (o.target == "cnot" || o.target == "generic") {
      cfg["target"] = o.target;
    } else {
      const json gate = read_json_file(o.target);
      cfg["target"] = "custom";
      if (gate.contains("name")) cfg["target_name"] = gate["name"];
      if (!gate.contains("matrix"))
        throw std::runtime_error("target file " + o.target + " has no \"matrix\"");
      cfg["target_matrix"] = gate["matrix"];
    }
  }

  if (kind == "sweep" && cfg.contains("pulse_csv"))
    merge_pulse_meta(cfg, cfg["pulse_csv"].get<std::string>());
  return cfg;
}

int run_kind(const std::string& kind, const Options& o) {
  json cfg;
  try {
    cfg = build_config(o, kind);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }

  char* summary_text = nullptr;
  const qoc_status status =
      qoc_experiment_run(kind.c_str(), cfg.dump().c_str(), o.out_dir.c_str(), &summary_text);
  if (status != QOC_OK) {
    std::cerr << "error: " << qoc_last_error() << "\n";
    return status == QOC_ERR_INVALID_ARGUMENT ? 2 : 1;
  }
  const std::string summary(summary_text);
  qoc_string_free(summary_text);
  std::cout << summary << "\n";

  const json doc = json::parse(summary);
  if (kind == "larc" && !doc["results"]["controllable"].get<bool>()) return 3;
  if (kind == "optimize" && !doc["results"]["target_reached"].get<bool>()) return 4;
  if (kind == "scan-tmin") {
    bool any = false;
    for (const json& entry : doc["scan"])
      any = any || !entry["t_eps"].is_null();
    if (!any) return 4;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Robust quantum optimal control: ensemble GRAPE optimization, "
      "controllability checks, and robustness experiments"};
  app.require_subcommand(1);

  const std::pair<const char*, const char*> kinds[] = {
      {"optimize", "Optimize a pulse for one ensemble configuration"},
      {"scan-tmin", "Find the minimum control time reaching eps, per ensemble size"},
      {"sweep", "Evaluate an existing pulse's error across the parameter interval"},
      {"worst-vs-time", "Worst sweep error as a function of control time"},
      {"penalty", "Penalty re-optimization compared against plain baselines"},
      {"larc", "Lie-algebra rank controllability check of the ensemble"},
  };

  std::vector<Options> options(std::size(kinds));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < std::size(kinds); ++i) {
    CLI::App* cmd = app.add_subcommand(kinds[i].first, kinds[i].second);
    add_flags(*cmd, options[i]);
    names.emplace_back(kinds[i].first);
  }

  CLI11_PARSE(app, argc, argv);

  for (std::size_t i = 0; i < names.size(); ++i)
    if (app.got_subcommand(names[i])) return run_kind(names[i], options[i]);
  return 2;
}
