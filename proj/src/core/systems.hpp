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

#ifndef QOC_CORE_SYSTEMS_HPP
#define QOC_CORE_SYSTEMS_HPP

#include <string>
#include <string_view>
#include <vector>

#include "core/linalg.hpp"

namespace qoc {

/// Bilinear control system with a scalar unknown drift coefficient:
/// the drift splits as drift(omega) = omega * h1 + h2, and each control
/// Hamiltonian enters with its own time-dependent amplitude.
struct ParameterizedSystem {
  CMatrix h1;
  CMatrix h2;
  std::vector<CMatrix> controls;
  Eigen::Index dim = 0;

  CMatrix drift(double omega) const { return omega * h1 + h2; }

  /// drift(omega) + sum_j amps[j] * controls[j]
  CMatrix hamiltonian(double omega, const Eigen::VectorXd& amps) const;
};

/// Validates shapes and Hermiticity of every part.
ParameterizedSystem make_system(CMatrix h1, CMatrix h2, std::vector<CMatrix> controls);

/// Drift omega * X(x)I + X(x)X + Y(x)Y + Z(x)Z with control Z(x)I.
ParameterizedSystem system_a();

enum class SystemBVariant { eq4, sec2 };

/// Drift omega-part X(x)I + I(x)X (eq4) or X(x)X + I(x)X (sec2), fixed part
/// Z(x)I + Y(x)Y + Z(x)Z, control X(x)I.
ParameterizedSystem system_b(SystemBVariant variant = SystemBVariant::eq4);

/// Equally spaced grid over [omega_0, omega_1], both endpoints included.
struct OmegaGrid {
  double omega0 = 0;
  double omega1 = 0;
  std::vector<double> points;

  std::size_t size() const { return points.size(); }
};

/// n >= 2 gives n equally spaced points including both endpoints; n = 1 gives
/// the single point omega_0. Throws on n = 0 or omega_0 > omega_1.
OmegaGrid discretize(double omega_0, double omega_1, std::size_t n);

/// Block-diagonal lift of a system over a grid: block n of the lifted drift is
/// base.drift(grid.points[n]), and each lifted control repeats the original.
struct EnsembleSystem {
  ParameterizedSystem base;
  OmegaGrid grid;
  CMatrix lifted_drift;
  std::vector<CMatrix> lifted_controls;

  Eigen::Index dim() const { return lifted_drift.rows(); }
};

EnsembleSystem lift_ensemble(const ParameterizedSystem& sys, const OmegaGrid& grid);

// ---------------------------------------------------------------------------
// Text form for operators: terms separated by + or -, each term an optional
// real coefficient, an optional "w*" marker assigning the term to the
// omega-dependent part, and a Pauli string over {I,X,Y,Z}, e.g.
//   "w*XI + XX + YY + ZZ"
//   "2*w*XI - 0.5*ZZ"
// All Pauli strings in one expression must have the same length (qubit count).
// ---------------------------------------------------------------------------

struct PauliExpr {
  CMatrix omega_part;     // sum of w-marked terms
  CMatrix constant_part;  // remaining terms
  int qubits = 0;
};

/// Throws std::invalid_argument with a description on malformed input.
PauliExpr parse_pauli_expr(std::string_view text);

/// Builds a system from a drift expression (w-marked terms become h1) and
/// control expressions (which must not contain w-marked terms).
ParameterizedSystem parse_system(std::string_view drift,
                                 const std::vector<std::string>& controls);

}  // namespace qoc

#endif
