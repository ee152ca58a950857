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

#include "qoc/qoc.h"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#include "core/experiments.hpp"
#include "core/fidelity.hpp"
#include "core/grape.hpp"
#include "core/io.hpp"
#include "core/lie.hpp"
#include "core/systems.hpp"

namespace {

thread_local std::string g_last_error;

struct BadHandle : std::exception {};

template <typename Fn>
qoc_status guarded(Fn&& fn) {
  try {
    fn();
    return QOC_OK;
  } catch (const BadHandle&) {
    g_last_error = "null handle";
    return QOC_ERR_BAD_HANDLE;
  } catch (const std::invalid_argument& err) {
    g_last_error = err.what();
    return QOC_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& err) {
    g_last_error = err.what();
    return QOC_ERR_RUNTIME;
  }
}

template <typename T>
const T& deref(const T* ptr) {
  if (!ptr) throw BadHandle{};
  return *ptr;
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::runtime_error("out of memory");
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qoc::CMatrix matrix_from_reim(const double* reim, Eigen::Index d) {
  if (!reim) throw std::invalid_argument("target matrix pointer is null");
  qoc::CMatrix m(d, d);
  std::size_t idx = 0;
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      m(i, j) = qoc::cxd(reim[idx], reim[idx + 1]);
      idx += 2;
    }
  return m;
}

qoc::FidelityKind kind_from_name(const char* kind) {
  const std::string name = kind ? kind : "su";
  if (name == "su") return qoc::FidelityKind::su;
  if (name == "psu") return qoc::FidelityKind::psu;
  throw std::invalid_argument("fidelity kind must be 'su' or 'psu'");
}

}  // namespace

struct qoc_system {
  qoc::ParameterizedSystem sys;
};

struct qoc_pulse {
  qoc::Pulse pulse;
};

extern "C" {

const char* qoc_version(void) { return "0.1.0"; }

const char* qoc_last_error(void) { return g_last_error.c_str(); }

void qoc_string_free(char* s) { std::free(s); }

qoc_status qoc_system_create(const char* id, const char* variant, qoc_system** out) {
  return guarded([&] {
    if (!out) throw BadHandle{};
    const std::string name = id ? id : "";
    if (name == "a") {
      *out = new qoc_system{qoc::system_a()};
      return;
    }
    if (name == "b") {
      const std::string var = variant ? variant : "eq4";
      qoc::SystemBVariant v;
      if (var == "eq4")
        v = qoc::SystemBVariant::eq4;
      else if (var == "sec2")
        v = qoc::SystemBVariant::sec2;
      else
        throw std::invalid_argument("variant must be 'eq4' or 'sec2'");
      *out = new qoc_system{qoc::system_b(v)};
      return;
    }
    throw std::invalid_argument("system id must be 'a' or 'b'");
  });
}

qoc_status qoc_system_parse(const char* drift, const char* const* controls,
                            size_t n_controls, qoc_system** out) {
  return guarded([&] {
    if (!out) throw BadHandle{};
    if (!drift) throw std::invalid_argument("drift expression is null");
    std::vector<std::string> ctrl;
    for (size_t i = 0; i < n_controls; ++i) {
      if (!controls || !controls[i]) throw std::invalid_argument("control expression is null");
      ctrl.emplace_back(controls[i]);
    }
    *out = new qoc_system{qoc::parse_system(drift, ctrl)};
  });
}

void qoc_system_free(qoc_system* sys) { delete sys; }

qoc_status qoc_system_dim(const qoc_system* sys, size_t* out_dim) {
  return guarded([&] {
    if (!out_dim) throw BadHandle{};
    *out_dim = static_cast<size_t>(deref(sys).sys.dim);
  });
}

qoc_status qoc_system_num_controls(const qoc_system* sys, size_t* out_n) {
  return guarded([&] {
    if (!out_n) throw BadHandle{};
    *out_n = deref(sys).sys.controls.size();
  });
}

qoc_status qoc_pulse_create(double total_time, size_t segments, size_t n_controls,
                            const double* amplitudes, qoc_pulse** out) {
  return guarded([&] {
    if (!out) throw BadHandle{};
    if (!amplitudes) throw std::invalid_argument("amplitudes pointer is null");
    if (segments == 0 || n_controls == 0)
      throw std::invalid_argument("segments and n_controls must be positive");
    Eigen::MatrixXd amps(static_cast<Eigen::Index>(segments),
                         static_cast<Eigen::Index>(n_controls));
    std::size_t idx = 0;
    for (Eigen::Index k = 0; k < amps.rows(); ++k)
      for (Eigen::Index j = 0; j < amps.cols(); ++j) amps(k, j) = amplitudes[idx++];
    *out = new qoc_pulse{qoc::make_pulse(total_time, std::move(amps))};
  });
}

qoc_status qoc_pulse_random(uint64_t seed, size_t segments, size_t n_controls,
                            double total_time, double amplitude, qoc_pulse** out) {
  return guarded([&] {
    if (!out) throw BadHandle{};
    *out = new qoc_pulse{
        qoc::random_initial_pulse(seed, segments, n_controls, total_time, amplitude)};
  });
}

void qoc_pulse_free(qoc_pulse* pulse) { delete pulse; }

qoc_status qoc_pulse_segments(const qoc_pulse* pulse, size_t* out_segments) {
  return guarded([&] {
    if (!out_segments) throw BadHandle{};
    *out_segments = deref(pulse).pulse.segments();
  });
}

qoc_status qoc_pulse_num_controls(const qoc_pulse* pulse, size_t* out_n) {
  return guarded([&] {
    if (!out_n) throw BadHandle{};
    *out_n = deref(pulse).pulse.controls();
  });
}

qoc_status qoc_pulse_total_time(const qoc_pulse* pulse, double* out_t) {
  return guarded([&] {
    if (!out_t) throw BadHandle{};
    *out_t = deref(pulse).pulse.total_time;
  });
}

qoc_status qoc_pulse_amplitudes(const qoc_pulse* pulse, double* out) {
  return guarded([&] {
    if (!out) throw BadHandle{};
    const Eigen::MatrixXd& amps = deref(pulse).pulse.amplitudes;
    std::size_t idx = 0;
    for (Eigen::Index k = 0; k < amps.rows(); ++k)
      for (Eigen::Index j = 0; j < amps.cols(); ++j) out[idx++] = amps(k, j);
  });
}

qoc_status qoc_pulse_save_csv(const qoc_pulse* pulse, const char* path) {
  return guarded([&] {
    if (!path) throw std::invalid_argument("path is null");
    qoc::save_pulse_csv(path, deref(pulse).pulse);
  });
}

qoc_status qoc_pulse_load_csv(const char* path, double total_time, qoc_pulse** out) {
  return guarded([&] {
    if (!out) throw BadHandle{};
    if (!path) throw std::invalid_argument("path is null");
    *out = new qoc_pulse{qoc::load_pulse_csv(path, total_time)};
  });
}

qoc_status qoc_fidelity(const qoc_system* sys, double omega, const qoc_pulse* pulse,
                        const double* target_reim, const char* kind, double* out_fidelity) {
  return guarded([&] {
    if (!out_fidelity) throw BadHandle{};
    const qoc::ParameterizedSystem& system = deref(sys).sys;
    const qoc::CMatrix target = matrix_from_reim(target_reim, system.dim);
    *out_fidelity = qoc::evaluate_member(system, omega, deref(pulse).pulse, target,
                                         kind_from_name(kind), false)
                        .report.value;
  });
}

qoc_status qoc_fidelity_omega_gradient(const qoc_system* sys, double omega,
                                       const qoc_pulse* pulse, const double* target_reim,
                                       double* out_gradient) {
  return guarded([&] {
    if (!out_gradient) throw BadHandle{};
    const qoc::ParameterizedSystem& system = deref(sys).sys;
    const qoc::CMatrix target = matrix_from_reim(target_reim, system.dim);
    *out_gradient =
        qoc::grad_fidelity_omega(system, omega, deref(pulse).pulse, target).value;
  });
}

qoc_status qoc_larc(const qoc_system* sys, double omega0, double omega1, size_t n,
                    int* out_controllable, size_t* out_dimension, size_t* out_expected) {
  return guarded([&] {
    const qoc::ParameterizedSystem& system = deref(sys).sys;
    const qoc::LarcReport report =
        qoc::larc_check(qoc::lift_ensemble(system, qoc::discretize(omega0, omega1, n)));
    if (out_controllable) *out_controllable = report.controllable ? 1 : 0;
    if (out_dimension) *out_dimension = report.dimension;
    if (out_expected) *out_expected = report.expected;
  });
}

qoc_status qoc_experiment_run(const char* kind, const char* config_json,
                              const char* out_dir, char** out_summary_json) {
  return guarded([&] {
    if (!out_summary_json) throw BadHandle{};
    if (!kind) throw std::invalid_argument("experiment kind is null");
    nlohmann::json config_doc = nlohmann::json::object();
    if (config_json && *config_json) {
      config_doc = nlohmann::json::parse(config_json, nullptr, false);
      if (config_doc.is_discarded())
        throw std::invalid_argument("config is not valid JSON");
    }
    const qoc::ExperimentConfig config = qoc::config_from_json(config_doc);
    const nlohmann::json summary =
        qoc::run_experiment(kind, config, out_dir ? out_dir : "");
    *out_summary_json = dup_string(summary.dump(2));
  });
}

}  // extern "C"
