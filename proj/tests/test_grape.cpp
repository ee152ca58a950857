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

#include <cmath>
#include <limits>

#include <doctest.h>

#include "core/grape.hpp"
#include "core/lbfgs.hpp"
#include "core/targets.hpp"

using namespace qoc;

namespace {

// Minimal fixture: single qubit, drift omega X with omega = 1, control Z.
ParameterizedSystem qubit_fixture() { return parse_system("w*X", {"Z"}); }

OptimizeConfig fixture_config() {
  OptimizeConfig cfg;
  cfg.grid = discretize(1.0, 1.0, 1);
  cfg.target = expm_hermitian(pauli_x(), 0.3);  // exp(-i 0.3 X)
  cfg.total_time = 4.0;
  cfg.segments = 16;
  cfg.epsilon = 1e-6;
  cfg.seed = 5;
  cfg.restarts = 3;
  cfg.check_controllability = false;
  return cfg;
}

}  // namespace

TEST_CASE("lbfgs minimizes a convex quadratic to machine precision") {
  auto objective = [](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
    grad = 2.0 * x;
    return x.squaredNorm();
  };
  Eigen::VectorXd x0 = Eigen::VectorXd::Constant(5, 3.0);
  LbfgsResult result = lbfgs_minimize(objective, x0, {});
  CHECK(result.f <= 1e-16);
  CHECK(result.status == LbfgsStatus::gradient_small);
  CHECK(result.iterations <= 5);
}

TEST_CASE("lbfgs solves the Rosenbrock function") {
  auto objective = [](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
    const double a = 1.0 - x(0), b = x(1) - x(0) * x(0);
    grad.resize(2);
    grad(0) = -2.0 * a - 400.0 * x(0) * b;
    grad(1) = 200.0 * b;
    return a * a + 100.0 * b * b;
  };
  Eigen::VectorXd x0(2);
  x0 << -1.2, 1.0;
  LbfgsResult result = lbfgs_minimize(objective, x0, {});
  CHECK(result.f <= 1e-10);
  CHECK(std::abs(result.x(0) - 1.0) <= 1e-5);
  CHECK(std::abs(result.x(1) - 1.0) <= 1e-5);
}

TEST_CASE("lbfgs history decreases monotonically") {
  auto objective = [](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
    const double a = 1.0 - x(0), b = x(1) - x(0) * x(0);
    grad.resize(2);
    grad(0) = -2.0 * a - 400.0 * x(0) * b;
    grad(1) = 200.0 * b;
    return a * a + 100.0 * b * b;
  };
  Eigen::VectorXd x0(2);
  x0 << -1.2, 1.0;
  LbfgsResult result = lbfgs_minimize(objective, x0, {});
  REQUIRE(result.history.size() >= 2);
  for (std::size_t k = 1; k < result.history.size(); ++k)
    CHECK(result.history[k] <= result.history[k - 1] + 1e-15);
}

TEST_CASE("lbfgs honors the evaluation budget and the stop callback") {
  int evals = 0;
  auto objective = [&evals](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
    ++evals;
    grad = 2.0 * x;
    return x.squaredNorm();
  };
  LbfgsParams params;
  params.max_evaluations = 3;
  LbfgsResult budget = lbfgs_minimize(objective, Eigen::VectorXd::Constant(4, 2.0), params);
  CHECK(budget.evaluations <= 3);
  CHECK(evals <= 3);

  LbfgsResult stopped = lbfgs_minimize(objective, Eigen::VectorXd::Constant(4, 2.0), {},
                                       [](double f) { return f < 1.0; });
  CHECK(stopped.status == LbfgsStatus::stopped_by_callback);
  CHECK(stopped.f < 1.0);
}

TEST_CASE("lbfgs backtracks out of rejected (+inf) trial points") {
  // Quadratic with a barrier: any x(0) > 2 is rejected. The line search must
  // shorten steps instead of failing.
  auto objective = [](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
    if (x(0) > 2.0) return std::numeric_limits<double>::infinity();
    grad = 2.0 * (x - Eigen::VectorXd::Ones(x.size()));
    return (x - Eigen::VectorXd::Ones(x.size())).squaredNorm();
  };
  Eigen::VectorXd x0 = Eigen::VectorXd::Constant(3, -5.0);
  LbfgsResult result = lbfgs_minimize(objective, x0, {});
  CHECK(result.f <= 1e-12);
}

TEST_CASE("random initial pulse is deterministic and respects the amplitude") {
  Pulse a = random_initial_pulse(99, 12, 2, 3.0, 0.8);
  Pulse b = random_initial_pulse(99, 12, 2, 3.0, 0.8);
  CHECK(a.amplitudes == b.amplitudes);
  CHECK(a.total_time == 3.0);
  CHECK(a.segments() == 12);
  CHECK(a.controls() == 2);
  CHECK(a.amplitudes.cwiseAbs().maxCoeff() <= 0.8);
  Pulse c = random_initial_pulse(100, 12, 2, 3.0, 0.8);
  CHECK(a.amplitudes != c.amplitudes);
  // Zero amplitude degenerates to the all-zero pulse.
  Pulse zero = random_initial_pulse(7, 5, 1, 1.0, 0.0);
  CHECK(zero.amplitudes.isZero(0.0));
}

TEST_CASE("grape reaches the single-qubit fixture target") {
  OptimizeResult result = grape_optimize(qubit_fixture(), fixture_config());
  CHECK(result.target_reached);
  CHECK(result.reason == StopReason::target_reached);
  CHECK(result.infidelity <= 1e-6);
  REQUIRE(result.member_infidelities.size() == 1);
}

TEST_CASE("grape results are recomputed honestly from the returned pulse") {
  ParameterizedSystem sys = qubit_fixture();
  OptimizeConfig cfg = fixture_config();
  OptimizeResult result = grape_optimize(sys, cfg);
  PenalizedFidelity check = penalized_fidelity(sys, cfg.grid, {}, result.pulse, cfg.target,
                                               0.0, cfg.kind);
  CHECK(std::abs(result.objective - check.value) <= 1e-12);
  CHECK(std::abs(result.infidelity - (1.0 - check.value)) <= 1e-12);
}

TEST_CASE("grape with a zero budget returns the initial pulse") {
  OptimizeConfig cfg = fixture_config();
  cfg.max_evaluations = 0;
  cfg.restarts = 1;
  OptimizeResult result = grape_optimize(qubit_fixture(), cfg);
  CHECK(result.reason == StopReason::max_evaluations);
  CHECK(result.history.size() == 1);
  Pulse initial = random_initial_pulse(cfg.seed, 16, 1, 4.0, cfg.init_amplitude);
  CHECK(result.pulse.amplitudes == initial.amplitudes);
}

TEST_CASE("grape is bitwise deterministic for a fixed configuration") {
  OptimizeConfig cfg = fixture_config();
  cfg.max_evaluations = 60;
  cfg.epsilon = 1e-12;  // keep optimizing; do not stop early
  OptimizeResult first = grape_optimize(qubit_fixture(), cfg);
  OptimizeResult second = grape_optimize(qubit_fixture(), cfg);
  CHECK(first.pulse.amplitudes == second.pulse.amplitudes);
  CHECK(first.objective == second.objective);
  CHECK(first.history == second.history);
}

TEST_CASE("grape history tracks the winning start and stays consistent") {
  OptimizeConfig cfg = fixture_config();
  // Small budget: no start can reach epsilon, so all three restarts run.
  cfg.max_evaluations = 12;
  cfg.epsilon = 1e-12;
  OptimizeResult result = grape_optimize(qubit_fixture(), cfg);
  REQUIRE(result.history.size() >= 1);
  // History entries are accepted steps: non-increasing objective.
  for (std::size_t k = 1; k < result.history.size(); ++k)
    CHECK(result.history[k] <= result.history[k - 1] + 1e-15);
  CHECK(result.history.back() == doctest::Approx(result.infidelity).epsilon(1e-9));
  REQUIRE(result.starts.size() == 3);
  for (std::size_t r = 0; r < result.starts.size(); ++r)
    CHECK(result.starts[r].seed == cfg.seed + r);
  CHECK(result.restart_index < 3);
}

TEST_CASE("grape stops at the first start that reaches epsilon") {
  OptimizeConfig cfg = fixture_config();
  cfg.epsilon = 0.5;  // trivially reachable
  OptimizeResult result = grape_optimize(qubit_fixture(), cfg);
  CHECK(result.target_reached);
  CHECK(result.starts.size() == 1);
}

TEST_CASE("grape reaches CNOT for a single-member system A ensemble") {
  OptimizeConfig cfg;
  cfg.grid = discretize(1.0, 1.0, 1);
  cfg.target = su_phase_align(cnot_gate().matrix);
  cfg.total_time = 8.0;
  cfg.epsilon = 1e-3;
  cfg.seed = 1;
  cfg.check_controllability = false;
  OptimizeResult result = grape_optimize(system_a(), cfg);
  CHECK(result.target_reached);
  CHECK(result.infidelity <= 1e-3);
}

TEST_CASE("grape cannot reach CNOT in a vanishing control time") {
  OptimizeConfig cfg;
  cfg.grid = discretize(1.0, 1.0, 1);
  cfg.target = su_phase_align(cnot_gate().matrix);
  cfg.total_time = 0.2;
  cfg.epsilon = 1e-3;
  cfg.restarts = 2;
  cfg.max_evaluations = 60;
  cfg.check_controllability = false;
  OptimizeResult result = grape_optimize(system_a(), cfg);
  CHECK_FALSE(result.target_reached);
  CHECK(result.infidelity > 1e-2);
}

TEST_CASE("grape runs the controllability pre-check when asked") {
  OptimizeConfig cfg = fixture_config();
  cfg.check_controllability = true;
  cfg.max_evaluations = 20;
  cfg.epsilon = 1e-12;
  OptimizeResult result = grape_optimize(qubit_fixture(), cfg);
  REQUIRE(result.larc.has_value());
  CHECK(result.larc->expected == 3);  // su(2) per single member
  CHECK(result.larc->controllable);
}

TEST_CASE("grape validates its configuration") {
  ParameterizedSystem sys = qubit_fixture();
  OptimizeConfig cfg = fixture_config();
  cfg.total_time = 0.0;
  CHECK_THROWS_AS(grape_optimize(sys, cfg), std::invalid_argument);
  cfg = fixture_config();
  cfg.epsilon = 0.0;
  CHECK_THROWS_AS(grape_optimize(sys, cfg), std::invalid_argument);
  cfg = fixture_config();
  cfg.alpha = -0.5;
  CHECK_THROWS_AS(grape_optimize(sys, cfg), std::invalid_argument);
  cfg = fixture_config();
  cfg.restarts = 0;
  CHECK_THROWS_AS(grape_optimize(sys, cfg), std::invalid_argument);
  cfg = fixture_config();
  cfg.target = 2.0 * cfg.target;
  CHECK_THROWS_AS(grape_optimize(sys, cfg), std::invalid_argument);
}

TEST_CASE("warm-started reoptimization with zero budget reports the base penalty") {
  // With no evaluations allowed, the returned pulse is the base pulse and the
  // reported objective must equal a direct penalized_fidelity call on it.
  ParameterizedSystem sys = qubit_fixture();
  OptimizeConfig cfg = fixture_config();
  OptimizeResult base = grape_optimize(sys, cfg);
  OptimizeConfig frozen = cfg;
  frozen.max_evaluations = 0;
  OptimizeResult re = reoptimize_with_penalty(sys, frozen, base.pulse, 0.3, {1.0});
  CHECK(re.pulse.amplitudes == base.pulse.amplitudes);
  PenalizedFidelity direct =
      penalized_fidelity(sys, cfg.grid, {1.0}, base.pulse, cfg.target, 0.3, cfg.kind);
  CHECK(std::abs(re.objective - direct.value) <= 1e-12);
  CHECK(std::abs(re.penalty_term - direct.penalty_term) <= 1e-12);
  CHECK(re.starts.size() == 1);
}

TEST_CASE("stop reasons have stable names") {
  CHECK(std::string(stop_reason_name(StopReason::target_reached)) == "target_reached");
  CHECK(std::string(stop_reason_name(StopReason::max_evaluations)) == "max_evaluations");
  CHECK(std::string(stop_reason_name(StopReason::line_search_fail)) == "line_search_fail");
  CHECK(std::string(stop_reason_name(StopReason::gradient_small)) == "gradient_small");
}
