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

#include "core/targets.hpp"

#include <cmath>
#include <stdexcept>

namespace qoc {

CMatrix nearest_unitary(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

CMatrix su_phase_align(const CMatrix& u) {
  const cxd det = u.determinant();
  if (std::abs(det) < 1e-12)
    throw std::invalid_argument("su_phase_align: matrix is singular");
  const double phi = std::arg(det);
  const double d = static_cast<double>(u.rows());
  return std::exp(cxd(0, -phi / d)) * u;
}

namespace {

TargetGate project_target(std::string name, const CMatrix& raw) {
  if (raw.rows() != raw.cols() || raw.rows() == 0)
    throw std::invalid_argument("target gate must be a non-empty square matrix");
  TargetGate gate;
  gate.name = std::move(name);
  gate.raw = raw;
  gate.matrix = nearest_unitary(raw);
  gate.projection_distance = frobenius_norm(CMatrix(raw - gate.matrix));
  if (gate.projection_distance > 1e-2)
    throw std::invalid_argument("target gate '" + gate.name + "' is too far from unitary (" +
                                std::to_string(gate.projection_distance) + ")");
  return gate;
}

}  // namespace

TargetGate cnot_gate() {
  CMatrix m = CMatrix::Zero(4, 4);
  m(0, 0) = 1;
  m(1, 1) = 1;
  m(2, 3) = 1;
  m(3, 2) = 1;
  TargetGate gate;
  gate.name = "cnot";
  gate.matrix = m;
  gate.raw = m;
  gate.projection_distance = 0;
  return gate;
}

TargetGate generic_gate() {
  CMatrix m(4, 4);
  m << cxd(0.56608, 0.00933), cxd(0.09906, 0.05347), cxd(-0.02898, -0.30192), cxd(0.20154, 0.73087),
      cxd(0.17824, 0.01578), cxd(0.88373, -0.03802), cxd(0.17237, 0.38526), cxd(-0.02653, -0.08195),
      cxd(0.57611, -0.27732), cxd(-0.41590, 0.07183), cxd(0.20749, 0.58112), cxd(-0.14760, -0.10256),
      cxd(0.24404, 0.42318), cxd(-0.06879, 0.14844), cxd(0.53465, -0.25151), cxd(0.46820, -0.40776);
  return project_target("generic", m);
}

TargetGate custom_gate(const std::string& name, const CMatrix& m) {
  return project_target(name, m);
}

}  // namespace qoc
