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

#ifndef QOC_CORE_TARGETS_HPP
#define QOC_CORE_TARGETS_HPP

#include <string>

#include "core/linalg.hpp"

namespace qoc {

/// A named target gate. `matrix` is exactly unitary; for targets defined by a
/// rounded literal it is the polar projection of `raw` and
/// `projection_distance` records the Frobenius distance moved.
struct TargetGate {
  std::string name;
  CMatrix matrix;
  CMatrix raw;
  double projection_distance = 0;
};

/// Nearest unitary in Frobenius norm (polar factor via SVD).
CMatrix nearest_unitary(const CMatrix& m);

/// Multiplies by a global phase so the determinant becomes 1, placing the gate
/// in SU(d). The d-th root uses the principal branch of arg(det).
CMatrix su_phase_align(const CMatrix& u);

TargetGate cnot_gate();

/// The fixed "generic" two-qubit unitary benchmark (entries quoted to 5
/// decimals, hence the projection step). Throws if the literal drifts more
/// than 1e-2 from the unitary manifold.
TargetGate generic_gate();

/// Wraps an arbitrary matrix as a target, projecting to the nearest unitary.
/// Throws std::invalid_argument if not square or further than 1e-2 from
/// unitary.
TargetGate custom_gate(const std::string& name, const CMatrix& m);

}  // namespace qoc

#endif
