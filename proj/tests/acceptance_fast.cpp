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
//
// Fast acceptance suite. Each check below guards one shipped claim end to
// end against an independent oracle (finite differences, a Taylor-series
// exponential, Gaussian elimination) and prints a single PASS/FAIL line;
// the exit code is the number of failures. The long optimization-based
// checks live in the slow suite.

#include <algorithm>
#include <cmath>
#include <complex>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "acceptance_util.hpp"
#include "core/experiments.hpp"
#include "core/fidelity.hpp"
#include "core/grape.hpp"
#include "core/io.hpp"
#include "core/lie.hpp"
#include "core/linalg.hpp"
#include "core/propagate.hpp"
#include "core/rng.hpp"
#include "core/systems.hpp"
#include "core/targets.hpp"
#include "oracles.hpp"

using namespace qoc;
using qoc::testing::AcceptanceReporter;
using qoc::testing::close_rel;
using qoc::testing::gaussian_closure_rank;
using qoc::testing::random_hermitian;
using qoc::testing::random_unitary;
using qoc::testing::sinhc_spectral_derivative;
using qoc::testing::Stopwatch;
using qoc::testing::taylor_expm;

namespace {

constexpr cxd kI{0.0, 1.0};

double max_abs(const CMatrix& m) { return m.cwiseAbs().maxCoeff(); }

std::vector<ParameterizedSystem> all_systems() {
  return {system_a(), system_b(SystemBVariant::eq4), system_b(SystemBVariant::sec2)};
}

// Criterion 1: the exact omega gradient (spectral form) and the exact control
// gradients agree with central finite differences on 100 seeded instances
// spanning both systems, both B drift variants, M in {5, 20}, T in {1, 5}.
void criterion_gradients(AcceptanceReporter& rep) {
  Stopwatch watch;
  const std::vector<ParameterizedSystem> systems = all_systems();
  const double kRel = 1e-5, kFloor = 1e-8, kStep = 1e-6;
  double worst_rel = 0, worst_abs = 0;
  int bad = 0;
  const auto check = [&](double exact, double fd) {
    worst_abs = std::max(worst_abs, std::abs(exact - fd));
    return close_rel(exact, fd, kRel, kFloor, worst_rel);
  };
  for (int i = 0; i < 100; ++i) {
    SplitMix64 rng(9000 + i);
    const ParameterizedSystem& sys = systems[i % 3];
    const std::size_t m = ((i / 3) % 2) ? 20 : 5;
    const double t = ((i / 6) % 2) ? 5.0 : 1.0;
    const double omega = rng.uniform(1.0, 2.0);
    const Pulse pulse = random_initial_pulse(777 + i, m, sys.controls.size(), t, 1.0);
    const CMatrix target = random_unitary(rng, sys.dim);
    bool instance_ok = true;
    try {
      const double exact = grad_fidelity_omega(sys, omega, pulse, target).value;
      const auto psu_at = [&](double w) {
        return evaluate_member(sys, w, pulse, target, FidelityKind::psu, false)
            .report.value;
      };
      const double fd = (psu_at(omega + kStep) - psu_at(omega - kStep)) / (2 * kStep);
      instance_ok &= check(exact, fd);

      for (FidelityKind kind : {FidelityKind::su, FidelityKind::psu}) {
        const Eigen::MatrixXd grad = grad_fidelity_controls(sys, omega, pulse, target, kind);
        Pulse probe = pulse;
        for (Eigen::Index k = 0; k < probe.amplitudes.rows(); ++k)
          for (Eigen::Index j = 0; j < probe.amplitudes.cols(); ++j) {
            const double saved = probe.amplitudes(k, j);
            probe.amplitudes(k, j) = saved + kStep;
            const double up =
                evaluate_member(sys, omega, probe, target, kind, false).report.value;
            probe.amplitudes(k, j) = saved - kStep;
            const double down =
                evaluate_member(sys, omega, probe, target, kind, false).report.value;
            probe.amplitudes(k, j) = saved;
            const double fd_amp = (up - down) / (2 * kStep);
            instance_ok &= check(grad(k, j), fd_amp);
          }
      }
    } catch (const std::exception&) {
      instance_ok = false;  // an undefined PSU phase would surface here
    }
    if (!instance_ok) ++bad;
  }
  const double elapsed = watch.seconds();
  rep.report(1, bad == 0 && elapsed <= 120.0,
             "gradients vs central differences on 100 seeded instances: %d mismatches, "
             "worst abs err %.2e, worst rel err above floor %.2e (rel tol 1e-5, floor "
             "1e-8), %.1fs",
             bad, worst_abs, worst_rel, elapsed);
}

// Criterion 2: the spectral exponential derivative reproduces the commuting
// closed form, stays continuous through near-degenerate gaps, and matches
// finite differences of an independent Taylor exponential.
void criterion_spectral_derivative(AcceptanceReporter& rep) {
  Stopwatch watch;
  SplitMix64 rng(4242);
  double worst_commuting = 0, worst_gap = 0, worst_fd = 0;

  for (int i = 0; i < 10; ++i) {
    const CMatrix h = random_hermitian(rng, 4);
    const CMatrix b = (h * h - 0.3 * h).eval();  // commutes with h
    const double scale = 0.5 + 0.2 * i;
    const EigenDecomposition eig = eigh(h);
    const CMatrix derivative = spectral_derivative(eig, scale, b);
    worst_commuting =
        std::max(worst_commuting, max_abs(derivative - b * expm_from_eig(eig, scale)));
  }

  for (double gap : {1e-4, 1e-8, 1e-12}) {
    EigenDecomposition eig;
    eig.values = Eigen::Vector4d(0.0, gap, 1.0, 2.5);
    eig.vectors = random_unitary(rng, 4);
    const CMatrix b = random_hermitian(rng, 4);
    const CMatrix derivative = spectral_derivative(eig, 1.3, b);
    const CMatrix reference = sinhc_spectral_derivative(eig, 1.3, b);
    worst_gap = std::max(worst_gap, max_abs(derivative - reference));
  }

  for (int i = 0; i < 10; ++i) {
    const CMatrix h = random_hermitian(rng, 4);
    const CMatrix b = random_hermitian(rng, 4);
    const double scale = 0.8 + 0.1 * i;
    const CMatrix base = -kI * scale * h;
    const double step = 1e-6;
    const CMatrix fd =
        (taylor_expm(base + step * b) - taylor_expm(base - step * b)) / (2 * step);
    worst_fd = std::max(worst_fd, max_abs(spectral_derivative(eigh(h), scale, b) - fd));
  }

  const bool ok = worst_commuting <= 1e-10 && worst_gap <= 1e-6 && worst_fd <= 1e-6;
  rep.report(2, ok,
             "spectral derivative: commuting err %.2e (tol 1e-10), gap-continuity err "
             "%.2e at gaps 1e-4/1e-8/1e-12 (tol 1e-6), Taylor-FD err %.2e (tol 1e-6), "
             "%.1fs",
             worst_commuting, worst_gap, worst_fd, watch.seconds());
}

// Criterion 3: Lie-algebra rank results, cross-checked at every point against
// the Gaussian-elimination closure oracle. System A and the sec2 drift of
// system B span su(4) (rank 15) at each tested omega and 15N on distinct
// N-point ensembles; a duplicated-point ensemble must fail. The eq4 drift of
// system B closes at rank 10 (an sp(2) subalgebra) -- the oracle confirms the
// library value, and the discrepancy with the nominal 15 is reported.
void criterion_larc(AcceptanceReporter& rep) {
  Stopwatch watch;
  bool ok = true;
  std::size_t eq4_rank = 0;

  const ParameterizedSystem a = system_a();
  const ParameterizedSystem eq4 = system_b(SystemBVariant::eq4);
  const ParameterizedSystem sec2 = system_b(SystemBVariant::sec2);

  const auto oracle_single = [](const ParameterizedSystem& sys, double omega) {
    std::vector<CMatrix> gens = {sys.drift(omega)};
    gens.insert(gens.end(), sys.controls.begin(), sys.controls.end());
    return gaussian_closure_rank(gens);
  };

  for (double omega : {0.5, 1.0, 1.5, 2.0}) {
    const LarcReport ra = larc_check(a, omega);
    ok &= ra.controllable && ra.dimension == 15 && oracle_single(a, omega) == 15;
    const LarcReport rs = larc_check(sec2, omega);
    ok &= rs.controllable && rs.dimension == 15 && oracle_single(sec2, omega) == 15;
    const LarcReport re = larc_check(eq4, omega);
    ok &= re.dimension == oracle_single(eq4, omega) && !re.controllable;
    eq4_rank = re.dimension;
  }

  const auto oracle_ensemble = [](const EnsembleSystem& ens) {
    std::vector<CMatrix> gens = {ens.lifted_drift};
    gens.insert(gens.end(), ens.lifted_controls.begin(), ens.lifted_controls.end());
    return gaussian_closure_rank(gens);
  };

  for (std::size_t n : {std::size_t{2}, std::size_t{3}}) {
    const OmegaGrid grid = discretize(1.0, 2.0, n);
    for (const ParameterizedSystem* sys : {&a, &sec2}) {
      const EnsembleSystem ens = lift_ensemble(*sys, grid);
      const LarcReport r = larc_check(ens);
      ok &= r.controllable && r.dimension == 15 * n && oracle_ensemble(ens) == 15 * n;
    }
    const EnsembleSystem ens_eq4 = lift_ensemble(eq4, grid);
    const LarcReport r_eq4 = larc_check(ens_eq4);
    ok &= !r_eq4.controllable && r_eq4.dimension == oracle_ensemble(ens_eq4);
  }

  OmegaGrid duplicated{1.5, 1.5, {1.5, 1.5}};
  const EnsembleSystem dup = lift_ensemble(a, duplicated);
  const LarcReport rd = larc_check(dup);
  ok &= !rd.controllable && rd.dimension < rd.expected &&
        rd.dimension == oracle_ensemble(dup);

  const double elapsed = watch.seconds();
  rep.report(3, ok && elapsed <= 60.0,
             "LARC vs Gaussian-elimination oracle: A and B/sec2 rank 15 at 4 omegas and "
             "15N for N=2,3; duplicated-point ensemble fails (%zu < %zu); %.1fs",
             rd.dimension, rd.expected, elapsed);
  rep.note("B/eq4 closes at rank %zu (sp(2) subalgebra, oracle-confirmed), not the "
           "nominal 15; only the sec2 drift variant of system B is fully controllable",
           eq4_rank);
}

// Criterion 4: product-formula limits. Trotter error decays like 1/n and the
// group-commutator error strictly decreases; both vanish for commuting pairs.
void criterion_limit_formulas(AcceptanceReporter& rep) {
  Stopwatch watch;
  bool ok = true;
  double worst_ratio = 0;

  for (int i = 0; i < 3; ++i) {
    SplitMix64 rng(600 + i);
    const CMatrix x = random_hermitian(rng, 4);
    const CMatrix y = random_hermitian(rng, 4);
    const double t = 1.0 + 0.3 * i;
    for (std::uint64_t n : {std::uint64_t{4}, std::uint64_t{8}}) {
      const double ratio = trotter_error(x, y, t, 8 * n) / trotter_error(x, y, t, n);
      ok &= ratio >= 1.0 / 16.0 && ratio <= 1.0 / 4.0;
      worst_ratio = std::max(worst_ratio, ratio);
    }
    double previous = std::numeric_limits<double>::infinity();
    for (std::uint64_t n : {std::uint64_t{4}, std::uint64_t{8}, std::uint64_t{16},
                            std::uint64_t{32}}) {
      const double err = commutator_limit_error(x, y, 0.9, n);
      ok &= err < previous;
      previous = err;
    }
  }

  SplitMix64 rng(77);
  const CMatrix h = random_hermitian(rng, 4);
  const CMatrix poly = (h * h - 0.4 * h).eval();
  const double trotter_commuting = trotter_error(h, poly, 1.3, 6);
  const double limit_commuting = commutator_limit_error(h, poly, 0.8, 5);
  ok &= trotter_commuting <= 1e-12 && limit_commuting <= 1e-12;

  rep.report(4, ok,
             "limit formulas: Trotter 8x ratios within [1/16, 1/4] (worst %.3f), "
             "commutator-limit error strictly decreasing over n=4..32, commuting pairs "
             "at %.1e / %.1e (tol 1e-12), %.1fs",
             worst_ratio, trotter_commuting, limit_commuting, watch.seconds());
}

// Criterion 5: the Duhamel bound holds on 1000 seeded draws.
void criterion_duhamel(AcceptanceReporter& rep) {
  Stopwatch watch;
  const std::vector<ParameterizedSystem> systems = all_systems();
  int violations = 0;
  double tightest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 1000; ++i) {
    SplitMix64 rng(20000 + i);
    const ParameterizedSystem& sys = systems[i % 3];
    const double t = rng.uniform(0.2, 5.0);
    const std::size_t m = 1 + static_cast<std::size_t>(rng.uniform(0.0, 12.0));
    const Pulse pulse = random_initial_pulse(30000 + i, m, sys.controls.size(), t, 2.0);
    const double omega = rng.uniform(1.0, 2.0);
    const double sigma = rng.uniform(1.0, 2.0);
    const auto [lhs, rhs] = duhamel_gap(sys, pulse, omega, sigma);
    if (lhs > rhs + 1e-12) ++violations;
    if (rhs > 0) tightest = std::min(tightest, rhs - lhs);
  }
  rep.report(5, violations == 0,
             "Duhamel bound: 0 of 1000 draws violate lhs <= rhs (smallest margin %.2e), "
             "%.1fs",
             tightest, watch.seconds());
}

// Criterion 9: an experiment record regenerates bitwise-identical artifacts
// from its own embedded config.
void criterion_determinism(AcceptanceReporter& rep) {
  Stopwatch watch;
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "qoc_acceptance_repro";
  fs::remove_all(base);
  fs::create_directories(base / "first");
  fs::create_directories(base / "second");

  ExperimentConfig config;
  config.system_id = "a";
  config.n = 3;
  config.total_time = 4.0;
  config.segments = 16;
  config.epsilon = 1e-4;
  config.seed = 7;
  config.restarts = 2;
  config.max_evaluations = 300;
  config.sweep_resolution = 101;
  config.alpha = 0.05;
  config.penalty_points = {1.25, 1.75};
  config.check_controllability = false;

  const auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  };

  const nlohmann::json first = run_experiment("optimize", config, base / "first");
  const fs::path first_dir = base / "first" / first["record"].get<std::string>();
  const ExperimentConfig replay =
      config_from_json(read_json(first_dir / "meta.json")["config"]);
  const nlohmann::json second = run_experiment("optimize", replay, base / "second");
  const fs::path second_dir = base / "second" / second["record"].get<std::string>();

  const bool pulses_match = slurp(first_dir / "pulse.csv") == slurp(second_dir / "pulse.csv");
  const bool sweeps_match = slurp(first_dir / "sweep.csv") == slurp(second_dir / "sweep.csv");
  const bool worst_match = first["results"]["worst_error"].get<double>() ==
                           second["results"]["worst_error"].get<double>();
  fs::remove_all(base);

  rep.report(9, pulses_match && sweeps_match && worst_match,
             "determinism: optimize record regenerated from its embedded config, "
             "pulse.csv/sweep.csv bitwise identical, worst errors equal, %.1fs",
             watch.seconds());
}

// Criterion 10: unitarity of every exponential and propagator on random
// draws, plus PSU phase invariance.
void criterion_invariants(AcceptanceReporter& rep) {
  Stopwatch watch;
  double worst_unitarity = 0;

  SplitMix64 rng(1010);
  for (int i = 0; i < 200; ++i) {
    const Eigen::Index d = 2 + (i % 7);
    const CMatrix u = expm_hermitian(random_hermitian(rng, d), rng.uniform(0.1, 3.0));
    worst_unitarity = std::max(
        worst_unitarity, max_abs(u.adjoint() * u - CMatrix::Identity(d, d)));
  }

  const std::vector<ParameterizedSystem> systems = all_systems();
  for (int i = 0; i < 50; ++i) {
    const ParameterizedSystem& sys = systems[i % 3];
    const std::size_t m = 5 + (i % 20);
    const Pulse pulse =
        random_initial_pulse(40000 + i, m, sys.controls.size(), 1.0 + 0.1 * i, 1.5);
    const PropagationTrace trace = propagate(sys, 1.0 + 0.02 * i, pulse);
    for (const CMatrix& u : trace.forward)
      worst_unitarity = std::max(
          worst_unitarity, max_abs(u.adjoint() * u - CMatrix::Identity(4, 4)));
  }

  double worst_phase = 0;
  for (int i = 0; i < 100; ++i) {
    const CMatrix u = random_unitary(rng, 4);
    const CMatrix targ = random_unitary(rng, 4);
    const double phi = rng.uniform(0.0, 6.283185307179586);
    const double direct = fidelity_psu(targ, u).value;
    const double rotated = fidelity_psu(targ, (std::exp(kI * phi) * u).eval()).value;
    worst_phase = std::max(worst_phase, std::abs(direct - rotated));
  }

  const bool ok = worst_unitarity <= 1e-12 && worst_phase <= 1e-12;
  rep.report(10, ok,
             "invariants: worst unitarity defect %.2e over 200 exponentials + 50 "
             "propagation traces, worst PSU phase sensitivity %.2e (tol 1e-12), %.1fs",
             worst_unitarity, worst_phase, watch.seconds());
}

}  // namespace

int main() {
  AcceptanceReporter rep;
  criterion_gradients(rep);
  criterion_spectral_derivative(rep);
  criterion_larc(rep);
  criterion_limit_formulas(rep);
  criterion_duhamel(rep);
  criterion_determinism(rep);
  criterion_invariants(rep);
  return rep.failures();
}
