/* Copyright 2026 The QOC Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* C interface to the robust quantum optimal control library.
 *
 * All functions return qoc_status; on failure qoc_last_error() describes the
 * problem for the calling thread. Objects are opaque handles released with
 * their matching _free function; strings returned through out-parameters are
 * released with qoc_string_free.
 */

#ifndef QOC_QOC_H_
#define QOC_QOC_H_

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qoc_status {
  QOC_OK = 0,
  QOC_ERR_INVALID_ARGUMENT = 1, /* bad input; see qoc_last_error() */
  QOC_ERR_RUNTIME = 2,          /* numerical or I/O failure */
  QOC_ERR_BAD_HANDLE = 3        /* null or foreign handle */
} qoc_status;

/* Library version string "major.minor.patch" (static storage, do not free). */
const char* qoc_version(void);

/* Message from the most recent failing call on this thread (static storage,
 * do not free; overwritten by the next failure). */
const char* qoc_last_error(void);

/* Releases a string returned by this library. NULL is allowed. */
void qoc_string_free(char* s);

/* --------------------------------------------------------------------------
 * Systems
 * ------------------------------------------------------------------------ */

typedef struct qoc_system qoc_system;

/* Built-in systems: id "a" (variant ignored, may be NULL) or id "b" with
 * variant "eq4" or "sec2" (NULL means "eq4"). */
qoc_status qoc_system_create(const char* id, const char* variant, qoc_system** out);

/* Custom system from Pauli expressions over {I,X,Y,Z}; terms marked "w*"
 * multiply the unknown drift coefficient, e.g. drift "w*XI + XX + YY + ZZ"
 * with control "ZI". */
qoc_status qoc_system_parse(const char* drift, const char* const* controls,
                            size_t n_controls, qoc_system** out);

void qoc_system_free(qoc_system* sys);

qoc_status qoc_system_dim(const qoc_system* sys, size_t* out_dim);
qoc_status qoc_system_num_controls(const qoc_system* sys, size_t* out_n);

/* --------------------------------------------------------------------------
 * Pulses (piecewise constant; amplitudes are segment-major:
 * amplitudes[k * n_controls + j] is control j during segment k)
 * ------------------------------------------------------------------------ */

typedef struct qoc_pulse qoc_pulse;

qoc_status qoc_pulse_create(double total_time, size_t segments, size_t n_controls,
                            const double* amplitudes, qoc_pulse** out);

/* Uniform amplitudes in [-amplitude, amplitude] from a deterministic
 * SplitMix64 stream. */
qoc_status qoc_pulse_random(uint64_t seed, size_t segments, size_t n_controls,
                            double total_time, double amplitude, qoc_pulse** out);

void qoc_pulse_free(qoc_pulse* pulse);

qoc_status qoc_pulse_segments(const qoc_pulse* pulse, size_t* out_segments);
qoc_status qoc_pulse_num_controls(const qoc_pulse* pulse, size_t* out_n);
qoc_status qoc_pulse_total_time(const qoc_pulse* pulse, double* out_t);

/* Copies all amplitudes into `out` (capacity segments * n_controls). */
qoc_status qoc_pulse_amplitudes(const qoc_pulse* pulse, double* out);

/* CSV round-trip (header t_start,u_1[,...]; 17 significant digits). The CSV
 * stores amplitudes only, so loading needs the total time. */
qoc_status qoc_pulse_save_csv(const qoc_pulse* pulse, const char* path);
qoc_status qoc_pulse_load_csv(const char* path, double total_time, qoc_pulse** out);

/* --------------------------------------------------------------------------
 * Fidelity
 * ------------------------------------------------------------------------ */

/* Propagates the pulse at drift coefficient omega and reports the gate
 * fidelity against a target. `target_reim` is the d x d target row-major as
 * interleaved [re, im] doubles (2 * d * d values); `kind` is "su" (phase
 * sensitive, Re tr/d) or "psu" (|tr|/d). */
qoc_status qoc_fidelity(const qoc_system* sys, double omega, const qoc_pulse* pulse,
                        const double* target_reim, const char* kind, double* out_fidelity);

/* Exact derivative of the phase-insensitive fidelity with respect to the
 * drift coefficient, via the spectral form of the exponential derivative. */
qoc_status qoc_fidelity_omega_gradient(const qoc_system* sys, double omega,
                                       const qoc_pulse* pulse, const double* target_reim,
                                       double* out_gradient);

/* --------------------------------------------------------------------------
 * Controllability
 * ------------------------------------------------------------------------ */

/* Lie-algebra rank check of the n-point ensemble over [omega0, omega1].
 * out_controllable is 1 when the closure reaches n * (d^2 - 1). Output
 * pointers may be NULL when not needed. */
qoc_status qoc_larc(const qoc_system* sys, double omega0, double omega1, size_t n,
                    int* out_controllable, size_t* out_dimension, size_t* out_expected);

/* --------------------------------------------------------------------------
 * Experiments
 * ------------------------------------------------------------------------ */

/* Runs one experiment end to end. kind is one of "optimize", "scan-tmin",
 * "sweep", "worst-vs-time", "penalty", "larc". config_json follows the
 * documented schema (unknown keys are rejected); out_dir receives record
 * directories plus index.jsonl, or pass "" to skip persistence. On success
 * *out_summary_json holds the run summary; release with qoc_string_free. */
qoc_status qoc_experiment_run(const char* kind, const char* config_json,
                              const char* out_dir, char** out_summary_json);

#ifdef __cplusplus
}
#endif

#endif /* QOC_QOC_H_ */
