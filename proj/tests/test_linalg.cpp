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
#include <complex>

#include <doctest.h>

#include "core/linalg.hpp"
#include "core/rng.hpp"
#include "oracles.hpp"

using namespace qoc;
using qoc::testing::kron_by_index;
using qoc::testing::random_hermitian;
using qoc::testing::taylor_expm;

namespace {

constexpr cxd kI{0.0, 1.0};

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("pauli matrices have their exact textbook entries") {
  CMatrix x = pauli_x(), y = pauli_y(), z = pauli_z(), id = pauli_i();
  CHECK(x(0, 1) == cxd(1, 0));
  CHECK(x(1, 0) == cxd(1, 0));
  CHECK(x(0, 0) == cxd(0, 0));
  CHECK(y(0, 1) == cxd(0, -1));
  CHECK(y(1, 0) == cxd(0, 1));
  CHECK(z(0, 0) == cxd(1, 0));
  CHECK(z(1, 1) == cxd(-1, 0));
  CHECK(id == identity(2));
  // Involutions: each squares to the identity exactly.
  CHECK((x * x) == identity(2));
  CHECK((y * y) == identity(2));
  CHECK((z * z) == identity(2));
}

TEST_CASE("kron matches the index-formula oracle") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::Index ra = 1 + static_cast<Eigen::Index>(rng.next_u64() % 4);
    const Eigen::Index ca = 1 + static_cast<Eigen::Index>(rng.next_u64() % 4);
    const Eigen::Index rb = 1 + static_cast<Eigen::Index>(rng.next_u64() % 4);
    const Eigen::Index cb = 1 + static_cast<Eigen::Index>(rng.next_u64() % 4);
    CMatrix a(ra, ca), b(rb, cb);
    for (Eigen::Index i = 0; i < ra; ++i)
      for (Eigen::Index j = 0; j < ca; ++j)
        a(i, j) = cxd(rng.uniform(-1, 1), rng.uniform(-1, 1));
    for (Eigen::Index i = 0; i < rb; ++i)
      for (Eigen::Index j = 0; j < cb; ++j)
        b(i, j) = cxd(rng.uniform(-1, 1), rng.uniform(-1, 1));
    CHECK(kron(a, b) == kron_by_index(a, b));  // same products, exact equality
  }
}

TEST_CASE("kron is associative and bilinear") {
  // Dyadic-rational entries make every product exact in binary floating point,
  // so associativity holds with exact equality.
  CMatrix a = 0.5 * pauli_x() + 0.25 * pauli_z();
  CMatrix b = 2.0 * pauli_y();
  CMatrix c = pauli_z() - 0.5 * pauli_i();
  CHECK(kron(kron(a, b), c) == kron(a, kron(b, c)));
  CHECK(kron(a + c, b) == CMatrix(kron(a, b) + kron(c, b)));
  CHECK(kron(2.0 * a, b) == CMatrix(2.0 * kron(a, b)));
}

TEST_CASE("commutator of X and Y is 2iZ") {
  CHECK(max_abs_diff(commutator(pauli_x(), pauli_y()), 2.0 * kI * pauli_z()) == 0.0);
  CHECK(max_abs_diff(commutator(pauli_y(), pauli_x()), -2.0 * kI * pauli_z()) == 0.0);
  CHECK(commutator(pauli_z(), pauli_z()).isZero(0.0));
  CHECK_THROWS_AS(commutator(pauli_x(), identity(3)), std::invalid_argument);
}

TEST_CASE("hermitian and unitary predicates") {
  CHECK(is_hermitian(pauli_y()));
  CHECK_FALSE(is_hermitian(pauli_x() + kI * identity(2)));
  CHECK(is_unitary(pauli_x()));
  CHECK(is_unitary(expm_hermitian(pauli_y(), 0.37)));
  CHECK_FALSE(is_unitary(2.0 * pauli_x()));
  CHECK(all_finite(pauli_x()));
  CMatrix bad = pauli_x();
  bad(0, 0) = cxd(std::nan(""), 0);
  CHECK_FALSE(all_finite(bad));
}

TEST_CASE("eigh reconstructs 1000 random Hermitian matrices, dims 2..16") {
  SplitMix64 rng(202);
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(rng.next_u64() % 15);
    CMatrix h = random_hermitian(rng, d);
    EigenDecomposition eig = eigh(h);
    CMatrix rebuilt = eig.vectors * eig.values.asDiagonal() * eig.vectors.adjoint();
    REQUIRE(frobenius_norm(rebuilt - h) <= 1e-9 * frobenius_norm(h));
    // Ascending eigenvalues and orthonormal vectors.
    for (Eigen::Index i = 1; i < d; ++i) REQUIRE(eig.values(i) >= eig.values(i - 1));
    REQUIRE(frobenius_norm(CMatrix(eig.vectors.adjoint() * eig.vectors) - identity(d)) <=
            1e-12 * static_cast<double>(d));
  }
}

TEST_CASE("expm_hermitian of X at pi/2 is -iX") {
  CMatrix u = expm_hermitian(pauli_x(), M_PI / 2.0);
  CHECK(max_abs_diff(u, -kI * pauli_x()) <= 1e-12);
}

TEST_CASE("expm_hermitian matches the Taylor-series oracle") {
  SplitMix64 rng(303);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index d = 2 + static_cast<Eigen::Index>(rng.next_u64() % 7);
    CMatrix h = random_hermitian(rng, d);
    const double scale = rng.uniform(-3.0, 3.0);
    CMatrix u = expm_hermitian(h, scale);
    CMatrix reference = taylor_expm(-kI * scale * h);
    REQUIRE(max_abs_diff(u, reference) <= 1e-11);
    REQUIRE(is_unitary(u));
  }
}

TEST_CASE("expm semigroup and inverse properties") {
  SplitMix64 rng(404);
  CMatrix h = random_hermitian(rng, 4);
  CMatrix u1 = expm_hermitian(h, 0.4);
  CMatrix u2 = expm_hermitian(h, 0.9);
  CHECK(frobenius_norm(CMatrix(u1 * u2) - expm_hermitian(h, 1.3)) <= 1e-9);
  CHECK(frobenius_norm(CMatrix(u1 * expm_hermitian(h, -0.4)) - identity(4)) <= 1e-12);
  // scale = 0 reconstructs V V^dagger, identity only up to rounding.
  CHECK(max_abs_diff(expm_hermitian(h, 0.0), identity(4)) <= 1e-14);
}

TEST_CASE("expm_from_eig agrees with expm_hermitian") {
  SplitMix64 rng(505);
  CMatrix h = random_hermitian(rng, 5);
  EigenDecomposition eig = eigh(h);
  CHECK(max_abs_diff(expm_from_eig(eig, 1.7), expm_hermitian(h, 1.7)) == 0.0);
}

TEST_CASE("unitary_power by repeated squaring") {
  CMatrix u = expm_hermitian(pauli_y(), 0.123);
  CMatrix direct = identity(2);
  for (int k = 0; k < 13; ++k) direct = direct * u;
  CHECK(frobenius_norm(unitary_power(u, 13) - direct) <= 1e-12);
  CHECK(unitary_power(u, 0) == identity(2));
  CHECK(unitary_power(u, 1) == u);
}

TEST_CASE("norms: frobenius and spectral") {
  CHECK(frobenius_norm(pauli_x()) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(spectral_norm(pauli_z()) == doctest::Approx(1.0).epsilon(1e-12));
  CMatrix m(2, 2);
  m << cxd(3, 0), cxd(0, 0), cxd(0, 0), cxd(1, 0);
  CHECK(spectral_norm(m) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("trotter error decays like 1/n") {
  const double e8 = trotter_error(pauli_x(), pauli_z(), 1.0, 8);
  const double e64 = trotter_error(pauli_x(), pauli_z(), 1.0, 64);
  CHECK(e64 < e8);
  const double ratio = e64 / e8;
  CHECK(ratio >= 1.0 / 16.0);
  CHECK(ratio <= 3.0 / 16.0);  // ~1/8 within 50%
}

TEST_CASE("trotter error vanishes for commuting generators") {
  CMatrix a = kron(pauli_z(), pauli_i());
  CMatrix b = kron(pauli_i(), pauli_x());
  CHECK(trotter_error(a, b, 1.3, 7) <= 1e-12);
}

TEST_CASE("commutator-limit error decreases in n and vanishes when commuting") {
  double previous = -1.0;
  for (std::uint64_t n : {4, 8, 16, 32}) {
    const double err = commutator_limit_error(pauli_x(), pauli_z(), 0.7, n);
    if (previous >= 0.0) CHECK(err < previous);
    previous = err;
  }
  CMatrix a = kron(pauli_z(), pauli_i());
  CMatrix b = kron(pauli_i(), pauli_x());
  CHECK(commutator_limit_error(a, b, 0.7, 8) <= 1e-12);
}

TEST_CASE("recurrence scan finds the 2pi recurrence of Z") {
  // ||I - e^{-iZt}||_2 = 2|sin(t/2)|, so the deviation dips below eps only
  // within ~eps/2 of 2pi; a fine lattice straddling 2pi must find it.
  auto t = recurrence_scan(pauli_z(), 1e-6, 6.2831853, 6.2831854, 1e-9);
  REQUIRE(t.has_value());
  CHECK(std::abs(*t - 2.0 * M_PI) <= 1e-6);
}

TEST_CASE("recurrence scan with eps >= 2 returns t_min") {
  auto t = recurrence_scan(pauli_z(), 2.0, 0.4, 10.0, 0.1);
  REQUIRE(t.has_value());
  CHECK(*t == 0.4);
}

TEST_CASE("recurrence scan on incommensurate frequencies") {
  // Spectrum {1, sqrt(2)}: recurrences exist (simultaneous Diophantine
  // approximation) but only at special times; a coarse tolerance finds one.
  CMatrix h(2, 2);
  h << cxd(1, 0), cxd(0, 0), cxd(0, 0), cxd(std::sqrt(2.0), 0);
  auto t = recurrence_scan(h, 0.1, 10.0, 500.0, 1e-3);
  REQUIRE(t.has_value());
  // Verify the reported time really is within tolerance of the identity.
  CHECK(spectral_norm(identity(2) - expm_hermitian(h, *t)) < 0.1);
}

TEST_CASE("recurrence scan reports nullopt when nothing qualifies") {
  CHECK_FALSE(recurrence_scan(pauli_z(), 1e-6, 1.0, 2.0, 0.1).has_value());
}
