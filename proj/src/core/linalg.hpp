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

#ifndef QOC_CORE_LINALG_HPP
#define QOC_CORE_LINALG_HPP

#include <complex>
#include <optional>

#include <Eigen/Dense>

namespace qoc {

using cxd = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Default numerical tolerances. All invariant checks in the library refer to
/// this record; callers that need different thresholds pass their own copy.
struct Tolerances {
  double hermitian_rel = 1e-12;     // ||M - M^dag||_F <= rel * ||M||_F
  double unitary_rel = 1e-9;        // ||U^dag U - I||_F <= rel * sqrt(d)
  double eig_reconstruct_rel = 1e-9;
  double lie_independence_rel = 1e-8;
  double degenerate_gap_rel = 1e-10;  // spectral-derivative case split
  double phase_floor = 1e-12;         // |g| below which the PSU phase is undefined
};

const Tolerances& default_tolerances();

bool all_finite(const CMatrix& m);
bool is_hermitian(const CMatrix& m, double rel = default_tolerances().hermitian_rel);
bool is_unitary(const CMatrix& m, double rel = default_tolerances().unitary_rel);

/// Pauli matrices with exact entries.
CMatrix pauli_i();
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();
CMatrix identity(Eigen::Index d);

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// AB - BA. Throws std::invalid_argument on shape mismatch.
CMatrix commutator(const CMatrix& a, const CMatrix& b);

double frobenius_norm(const CMatrix& m);

/// Largest singular value.
double spectral_norm(const CMatrix& m);

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending and the
/// columns of `vectors` forming the orthonormal eigenbasis.
struct EigenDecomposition {
  Eigen::VectorXd values;
  CMatrix vectors;

  Eigen::Index dim() const { return vectors.rows(); }
};

/// Throws std::runtime_error if the eigensolver does not converge.
EigenDecomposition eigh(const CMatrix& h);

/// exp(-i * scale * H) for Hermitian H, via eigendecomposition.
CMatrix expm_hermitian(const CMatrix& h, double scale);
CMatrix expm_from_eig(const EigenDecomposition& eig, double scale);

/// Unitary m^k by repeated squaring.
CMatrix unitary_power(const CMatrix& m, std::uint64_t k);

/// || (e^{-iAt/n} e^{-iBt/n})^n - e^{-i(A+B)t} || in spectral norm.
double trotter_error(const CMatrix& a, const CMatrix& b, double t, std::uint64_t n);

/// Deviation of the group-commutator product from its limit,
/// || (e^{iAt/n} e^{iBt/n} e^{-iAt/n} e^{-iBt/n})^{n^2} - e^{-[A,B]t^2} ||,
/// with skew-Hermitian generators -iA, -iB so the limit target is unitary.
double commutator_limit_error(const CMatrix& a, const CMatrix& b, double t,
                              std::uint64_t n);

/// Smallest scanned time t in [t_min, t_max] (lattice t_min + k*step) with
/// ||I - e^{-iHt}||_2 < eps, or nullopt when no lattice point qualifies.
std::optional<double> recurrence_scan(const CMatrix& h, double eps, double t_min,
                                      double t_max, double step);

}  // namespace qoc

#endif
