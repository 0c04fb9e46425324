// SPDX-License-Identifier: Apache-2.0
//
// irsdm: beamforming simulator for multi-IRS multi-stream links
// Copyright (C) 2026 The irsdm authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "irsdm/errors.hpp"
#include "irsdm/numerics.hpp"

#include "test_support.hpp"

#include <doctest.h>

using namespace irsdm;
using irsdm::testing::random_cmatrix;

TEST_CASE("fix_phase makes the largest entry real positive, lowest index on ties")
{
    CVector v(3);
    v << cdouble(0, 1), cdouble(0, -1), cdouble(0.5, 0);
    fix_phase(v);
    CHECK(v[0].real() == doctest::Approx(1.0));
    CHECK(v[0].imag() == 0.0);
    CHECK(v[1].real() == doctest::Approx(-1.0));
    CHECK(std::abs(v[2] - cdouble(0, -0.5)) < 1e-15);

    CVector z = CVector::Zero(2);
    fix_phase(z);
    CHECK(z.norm() == 0.0);
}

TEST_CASE("hermitian_eig_max agrees with power iteration")
{
    std::mt19937_64 rng(3);
    for (int n : {1, 2, 5, 12})
    {
        const CMatrix X = random_cmatrix(n, n, rng);
        const CMatrix A = X * X.adjoint();
        const EigPair e = hermitian_eig_max(A);
        const auto [lam, vec] = irsdm::testing::power_iteration(A);
        CHECK(e.value == doctest::Approx(lam).epsilon(1e-9));
        CHECK((A * e.vector - e.value * e.vector).norm() <= 1e-9 * e.value);
        CHECK(std::abs(std::abs(e.vector.dot(vec)) - 1.0) <= 1e-6);
        CHECK(hermitian_lambda_max(A) == doctest::Approx(e.value).epsilon(1e-12));
    }
}

TEST_CASE("hermitian_eig_max rejects bad input")
{
    CHECK_THROWS_AS(hermitian_eig_max(CMatrix(2, 3)), Error);
    CMatrix A = CMatrix::Identity(2, 2);
    A(0, 0) = std::numeric_limits<double>::quiet_NaN();
    try
    {
        hermitian_eig_max(A);
        FAIL("expected an error");
    }
    catch (const Error &e)
    {
        CHECK(e.kind() == ErrorKind::domain);
    }
}

TEST_CASE("pseudo_inverse satisfies the Moore-Penrose conditions")
{
    std::mt19937_64 rng(5);
    // full rank, wide, and rank-deficient cases
    const CMatrix A1 = random_cmatrix(4, 4, rng);
    const CMatrix A2 = random_cmatrix(3, 6, rng);
    const CMatrix A3 = random_cmatrix(5, 2, rng) * random_cmatrix(2, 4, rng);
    for (const CMatrix &A : {A1, A2, A3})
    {
        const CMatrix P = pseudo_inverse(A);
        const double s = A.norm();
        CHECK((A * P * A - A).norm() <= 1e-10 * s);
        CHECK((P * A * P - P).norm() <= 1e-10 * P.norm());
        CHECK((A * P - (A * P).adjoint()).norm() <= 1e-10);
        CHECK((P * A - (P * A).adjoint()).norm() <= 1e-10);
    }
    CHECK(pseudo_inverse(CMatrix::Zero(2, 3)).norm() == 0.0);
}

TEST_CASE("svd reconstructs and orders singular values")
{
    std::mt19937_64 rng(7);
    const CMatrix A = random_cmatrix(6, 4, rng);
    for (bool full : {true, false})
    {
        const SvdResult d = svd(A, full);
        CHECK((d.reconstruct() - A).norm() <= 1e-12 * A.norm());
        for (Eigen::Index i = 1; i < d.S.size(); ++i)
            CHECK(d.S[i] <= d.S[i - 1]);
        CHECK((d.U.adjoint() * d.U - CMatrix::Identity(d.U.cols(), d.U.cols())).norm() < 1e-12);
    }
    CHECK(svd(A, true).U.cols() == 6);
    CHECK(svd(A, false).U.cols() == 4);
}

TEST_CASE("numerical_rank")
{
    std::mt19937_64 rng(8);
    CHECK(numerical_rank(random_cmatrix(5, 5, rng)) == 5);
    CHECK(numerical_rank(random_cmatrix(6, 2, rng) * random_cmatrix(2, 6, rng)) == 2);
    CHECK(numerical_rank(CMatrix::Zero(3, 3)) == 0);
}

TEST_CASE("generalized_rayleigh_max beats sampled unit vectors")
{
    std::mt19937_64 rng(9);
    const int n = 6;
    const CMatrix X = random_cmatrix(n, n, rng);
    const CMatrix num = X * X.adjoint();
    RVector den(n);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (int i = 0; i < n; ++i)
        den[i] = u(rng);
    auto quotient = [&](const CVector &x) {
        return x.dot(num * x).real() / (x.cwiseAbs2().array() * den.array()).sum();
    };
    const CVector best = generalized_rayleigh_max(num, den);
    CHECK(best.norm() == doctest::Approx(1.0));
    const double q = quotient(best);
    for (int t = 0; t < 10000; ++t)
        REQUIRE(quotient(irsdm::testing::random_cvector(n, rng)) <= q * (1.0 + 1e-12));

    // closed form: the top eigenvalue of the whitened pencil
    const RVector w = den.cwiseSqrt().cwiseInverse();
    CHECK(q == doctest::Approx(hermitian_lambda_max(w.asDiagonal() * num * w.asDiagonal())).epsilon(1e-10));

    RVector bad = den;
    bad[2] = 0.0;
    CHECK_THROWS_AS(generalized_rayleigh_max(num, bad), Error);
}

TEST_CASE("log_det_ratio and log_det_hpd")
{
    std::mt19937_64 rng(10);
    const CMatrix B = irsdm::testing::random_hpd(4, rng);
    const CMatrix X = random_cmatrix(4, 2, rng);
    const CMatrix A = X * X.adjoint();
    // det(I + B^{-1} A) via an LU determinant as an independent path
    const double direct = std::log(std::abs((CMatrix::Identity(4, 4) + B.inverse() * A).determinant()));
    CHECK(log_det_ratio(A, B) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(log_det_ratio(CMatrix::Zero(4, 4), B) == doctest::Approx(0.0));
    CHECK(log_det_hpd(B) == doctest::Approx(std::log(B.determinant().real())).epsilon(1e-12));

    try
    {
        log_det_ratio(A, CMatrix::Zero(4, 4));
        FAIL("expected a conditioning error");
    }
    catch (const Error &e)
    {
        CHECK(e.kind() == ErrorKind::conditioning);
    }
    CHECK_THROWS_AS(log_det_ratio(A, CMatrix::Identity(3, 3)), Error);
}

TEST_CASE("Error carries kind and context")
{
    const Error e(ErrorKind::infeasible, "budget");
    const Error c = e.with_context("iteration 3");
    CHECK(c.kind() == ErrorKind::infeasible);
    CHECK(std::string(c.what()) == "iteration 3: budget");
    CHECK(std::string(to_string(ErrorKind::config)) == "config");
}
