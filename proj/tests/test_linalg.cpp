// SPDX-License-Identifier: Apache-2.0
//
// simsec - secure MIMO links with artificial noise and quantized feedback
// Copyright (C) 2026 The simsec authors
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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>

#include "oracles.hpp"
#include "simsec/linalg.hpp"

using namespace simsec;
using Catch::Approx;

namespace {

ComplexMatrix eye(Index n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix sigma_matrix(const SvdResult &d, Index m, Index n)
{
    ComplexMatrix S = ComplexMatrix::Zero(m, n);
    for (Index i = 0; i < d.singular_values.size(); ++i)
        S(i, i) = d.singular_values(i);
    return S;
}

} // namespace

TEST_CASE("svd of identity and diagonal matrices", "[linalg]")
{
    const SvdResult a = svd(eye(3));
    REQUIRE(a.singular_values.size() == 3);
    for (Index i = 0; i < 3; ++i)
        CHECK(a.singular_values(i) == Approx(1.0).margin(1e-14));

    ComplexMatrix D = ComplexMatrix::Zero(2, 2);
    D(0, 0) = 3.0;
    const SvdResult b = svd(D);
    CHECK(b.singular_values(0) == Approx(3.0).margin(1e-14));
    CHECK(b.singular_values(1) == Approx(0.0).margin(1e-14));
    // U and V agree with the identity up to phase.
    CHECK(std::abs(b.U(0, 0)) == Approx(1.0).margin(1e-14));
    CHECK(std::abs(b.V(0, 0)) == Approx(1.0).margin(1e-14));
    CHECK((b.U * sigma_matrix(b, 2, 2) * b.V.adjoint() - D).norm() < 1e-14);
}

TEST_CASE("svd reconstructs random wide and tall matrices", "[linalg]")
{
    Rng rng(11);
    for (int t = 0; t < 1000; ++t)
    {
        const Index m = 1 + t % 6, n = 1 + (t / 6) % 6;
        const ComplexMatrix A = random_gaussian_matrix(m, n, rng);
        const SvdResult d = svd(A);
        REQUIRE((d.U * sigma_matrix(d, m, n) * d.V.adjoint() - A).norm() / A.norm() < 1e-9);
        REQUIRE((d.U.adjoint() * d.U - eye(m)).norm() < 1e-10);
        REQUIRE((d.V.adjoint() * d.V - eye(n)).norm() < 1e-10);
        for (Index i = 1; i < d.singular_values.size(); ++i)
            REQUIRE(d.singular_values(i) <= d.singular_values(i - 1));
    }
}

TEST_CASE("svd is deterministic and rejects non-finite input", "[linalg]")
{
    Rng rng(3);
    const ComplexMatrix A = random_gaussian_matrix(4, 6, rng);
    const SvdResult a = svd(A), b = svd(A);
    CHECK(a.U == b.U);
    CHECK(a.V == b.V);

    ComplexMatrix bad = A;
    bad(1, 2) = Complex(std::numeric_limits<double>::quiet_NaN(), 0.0);
    try
    {
        svd(bad);
        FAIL("expected an error");
    }
    catch (const Error &e)
    {
        CHECK(e.kind() == ErrorKind::invalid_input);
    }
}

TEST_CASE("qr_tall on hand-checkable inputs", "[linalg]")
{
    ComplexMatrix A = ComplexMatrix::Zero(4, 2);
    A.topRows(2) = eye(2);
    const QrTallResult q = qr_tall(A);
    CHECK((q.F - A).norm() < 1e-14);
    CHECK((q.C - eye(2)).norm() < 1e-14);

    ComplexMatrix e = ComplexMatrix::Zero(2, 1);
    e(0, 0) = 2.0;
    const QrTallResult s = qr_tall(e);
    CHECK(std::abs(s.F(0, 0) - Complex(1.0)) < 1e-14);
    CHECK(std::abs(s.F(1, 0)) < 1e-14);
    CHECK(std::abs(s.C(0, 0) - Complex(2.0)) < 1e-14);
}

TEST_CASE("qr_tall of random channel adjoints", "[linalg]")
{
    Rng rng(5);
    for (int t = 0; t < 1000; ++t)
    {
        const Index n_r = 1 + t % 4, n_t = n_r + 1 + (t / 4) % 4;
        const ComplexMatrix Hd = random_gaussian_matrix(n_r, n_t, rng);
        const QrTallResult q = qr_tall(Hd.adjoint());
        REQUIRE((q.F * q.C - Hd.adjoint()).norm() / Hd.norm() < 1e-9);
        REQUIRE((q.F.adjoint() * q.F - eye(n_r)).norm() < 1e-10);
        for (Index i = 0; i < n_r; ++i)
        {
            REQUIRE(q.C(i, i).real() > 0.0);
            REQUIRE(std::abs(q.C(i, i).imag()) < 1e-12);
            for (Index j = 0; j < i; ++j)
                REQUIRE(std::abs(q.C(i, j)) < 1e-12);
        }
    }
}

TEST_CASE("qr_tall rejects wide or rank-deficient input", "[linalg]")
{
    Rng rng(2);
    const ComplexMatrix v = random_gaussian_matrix(4, 1, rng);
    ComplexMatrix A(4, 2);
    A << v, 2.0 * v;
    try
    {
        qr_tall(A);
        FAIL("expected an error");
    }
    catch (const Error &e)
    {
        CHECK(e.kind() == ErrorKind::degenerate_channel);
    }
    CHECK_THROWS_AS(qr_tall(random_gaussian_matrix(2, 3, rng)), Error);
}

TEST_CASE("nullspace_basis examples", "[linalg]")
{
    ComplexMatrix A = ComplexMatrix::Zero(2, 4);
    A.leftCols(2) = eye(2);
    const ComplexMatrix N = nullspace_basis(A);
    REQUIRE(N.rows() == 4);
    REQUIRE(N.cols() == 2);
    CHECK((A * N).norm() < 1e-14);
    // span of e3, e4: the top block vanishes
    CHECK(N.topRows(2).norm() < 1e-14);

    ComplexMatrix a(1, 2);
    a << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    const ComplexMatrix n = nullspace_basis(a);
    REQUIRE(n.cols() == 1);
    // n = phase * (1, -1) / sqrt 2
    CHECK(std::abs(n(0, 0) + n(1, 0)) < 1e-14);
    CHECK(std::abs(n(0, 0)) == Approx(1.0 / std::sqrt(2.0)).margin(1e-14));

    CHECK_THROWS_AS(nullspace_basis(eye(3)), Error);
}

TEST_CASE("nullspace bases are orthonormal and annihilating", "[linalg]")
{
    Rng rng(17);
    for (int t = 0; t < 1000; ++t)
    {
        const Index p = 1 + t % 4, q = p + 1 + (t / 4) % 4;
        const ComplexMatrix A = random_gaussian_matrix(p, q, rng);
        const ComplexMatrix N = nullspace_basis(A);
        REQUIRE(N.cols() == q - p);
        REQUIRE((N.adjoint() * N - eye(q - p)).norm() < 1e-10);
        REQUIRE((A * N).norm() < 1e-10);

        const ComplexMatrix L = left_nullspace_basis(A.adjoint());
        REQUIRE(L.cols() == q - p);
        REQUIRE((L.adjoint() * L - eye(q - p)).norm() < 1e-10);
        REQUIRE((L.adjoint() * A.adjoint()).norm() < 1e-10);
    }
}

TEST_CASE("left_nullspace_basis examples", "[linalg]")
{
    ComplexMatrix e1 = ComplexMatrix::Zero(2, 1);
    e1(0, 0) = 1.0;
    const ComplexMatrix a = left_nullspace_basis(e1);
    REQUIRE(a.cols() == 1);
    CHECK(std::abs(a(0, 0)) < 1e-14);
    CHECK(std::abs(a(1, 0)) == Approx(1.0).margin(1e-14));

    ComplexMatrix I32 = ComplexMatrix::Zero(3, 2);
    I32.topRows(2) = eye(2);
    const ComplexMatrix b = left_nullspace_basis(I32);
    REQUIRE(b.cols() == 1);
    CHECK(std::abs(b(2, 0)) == Approx(1.0).margin(1e-14));

    Rng rng(4);
    const ComplexMatrix v = random_gaussian_matrix(4, 1, rng);
    const ComplexMatrix c = left_nullspace_basis(v);
    REQUIRE(c.rows() == 4);
    REQUIRE(c.cols() == 3);
    CHECK((c.adjoint() * v).norm() < 1e-10);
    CHECK((c.adjoint() * c - eye(3)).norm() < 1e-10);

    const ComplexMatrix none = left_nullspace_basis(ComplexMatrix(3, 0));
    CHECK((none - eye(3)).norm() == 0.0);
}

TEST_CASE("logdet_pd on diagonal matrices", "[linalg]")
{
    CHECK(logdet_pd(eye(3)) == Approx(0.0).margin(1e-15));
    CHECK(logdet_pd(2.0 * eye(2)) == Approx(2.0).margin(1e-14));
}

TEST_CASE("logdet_pd matches the eigenvalue oracle", "[linalg]")
{
    Rng rng(23);
    for (int t = 0; t < 1000; ++t)
    {
        const Index n = 1 + t % 6;
        const ComplexMatrix M = random_gaussian_matrix(n, n, rng);
        const ComplexMatrix A = hermitian_part(M * M.adjoint()) + eye(n);
        REQUIRE(std::abs(logdet_pd(A) - oracle::log2det_eigen(A)) < 1e-9);
    }
}

TEST_CASE("logdet_pd scales with a positive factor", "[linalg]")
{
    Rng rng(29);
    for (int t = 0; t < 200; ++t)
    {
        const Index n = 1 + t % 5;
        const ComplexMatrix A = oracle::random_pd(n, rng);
        const double c = std::exp(std::uniform_real_distribution<double>(-5.0, 5.0)(rng));
        REQUIRE(std::abs(logdet_pd(c * A) - (double(n) * std::log2(c) + logdet_pd(A))) < 1e-9);
    }
}

TEST_CASE("logdet_pd reports the offending eigenvalue", "[linalg]")
{
    ComplexMatrix A = eye(2);
    A(1, 1) = -0.5;
    try
    {
        logdet_pd(A);
        FAIL("expected an error");
    }
    catch (const NotPositiveDefinite &e)
    {
        CHECK(e.kind() == ErrorKind::not_positive_definite);
        CHECK(e.eigenvalue() == Approx(-0.5).margin(1e-12));
    }

    ComplexMatrix skew = eye(2);
    skew(0, 1) = 0.3;
    CHECK_THROWS_AS(logdet_pd(skew), Error);
}

TEST_CASE("random_gaussian_matrix is reproducible and unit variance", "[linalg]")
{
    Rng a(99), b(99);
    CHECK(random_gaussian_matrix(2, 2, a) == random_gaussian_matrix(2, 2, b));

    Rng rng(7);
    const ComplexMatrix x = random_gaussian_matrix(1000, 1, rng);
    CHECK(x.squaredNorm() / 1000.0 == Approx(1.0).margin(0.15));
    // real and imaginary halves each carry variance 1/2
    double re = 0.0;
    for (Index i = 0; i < x.rows(); ++i)
        re += x(i, 0).real() * x(i, 0).real();
    CHECK(re / 1000.0 == Approx(0.5).margin(0.1));

    CHECK(all_finite(random_gaussian_matrix(3, 4, rng)));
}

TEST_CASE("random_truncated_unitary", "[linalg]")
{
    Rng rng(8);
    const ComplexMatrix U = random_truncated_unitary(4, 4, rng);
    CHECK((U.adjoint() * U - eye(4)).norm() < 1e-10);
    CHECK(std::abs(U.determinant()) == Approx(1.0).margin(1e-9));

    Rng a(5), b(5);
    CHECK(random_truncated_unitary(4, 2, a) == random_truncated_unitary(4, 2, b));

    const ComplexMatrix X = random_truncated_unitary(6, 3, rng);
    const ComplexMatrix Y = random_truncated_unitary(6, 3, rng);
    CHECK((X.adjoint() * X - eye(3)).norm() < 1e-10);
    CHECK(oracle::chordal_principal_angles(X, Y) > 1e-6);

    try
    {
        random_truncated_unitary(2, 3, rng);
        FAIL("expected an error");
    }
    catch (const Error &e)
    {
        CHECK(e.kind() == ErrorKind::invalid_shape);
    }
}

TEST_CASE("gaussian_mi hand-checkable values", "[linalg]")
{
    const ComplexMatrix one = eye(1);
    const ComplexMatrix none(0, 0);
    CHECK(gaussian_mi(one, one, none, 1.0) == Approx(1.0).margin(1e-14));
    CHECK(gaussian_mi(ComplexMatrix::Zero(2, 3), eye(3), none, 1.0) == Approx(0.0).margin(1e-14));
    // interference of variance 1 halves the effective SNR
    CHECK(gaussian_mi(one, 2.0 * one, one, 1.0) == Approx(1.0).margin(1e-14));
}

TEST_CASE("gaussian_mi agrees with independent evaluations", "[linalg]")
{
    Rng rng(31);
    for (int t = 0; t < 1000; ++t)
    {
        const ComplexMatrix H = random_gaussian_matrix(2, 3, rng);
        const ComplexMatrix K = oracle::random_pd(3, rng);
        const ComplexMatrix Sig = oracle::random_pd(2, rng, 0.0);
        const double s = 0.5 + double(t % 4);
        const double mi = gaussian_mi(H, K, Sig, s);

        const ComplexMatrix W = Sig + s * eye(2);
        const double direct = logdet_pd(hermitian_part(H * K * H.adjoint() + W)) - logdet_pd(W);
        REQUIRE(std::abs(mi - direct) < 1e-9);
        REQUIRE(std::abs(mi - oracle::mi_joint_covariance(H, K, W)) < 1e-8);
    }
}

TEST_CASE("gaussian_mi is nonnegative and monotone in signal power", "[linalg]")
{
    Rng rng(37);
    const ComplexMatrix none(0, 0);
    for (int t = 0; t < 200; ++t)
    {
        const ComplexMatrix H = random_gaussian_matrix(3, 2, rng);
        const ComplexMatrix K = oracle::random_pd(2, rng);
        double prev = 0.0;
        for (double scale : {1e-3, 1e-1, 1.0, 10.0, 1e3})
        {
            const double mi = gaussian_mi(H, scale * K, none, 1.0);
            REQUIRE(mi >= 0.0);
            REQUIRE(mi >= prev - 1e-12);
            prev = mi;
        }
    }
}

TEST_CASE("gaussian_mi rejects indefinite covariances", "[linalg]")
{
    const ComplexMatrix one = eye(1);
    CHECK_THROWS_AS(gaussian_mi(one, -one, ComplexMatrix(0, 0), 1.0), Error);
    CHECK_THROWS_AS(gaussian_mi(one, one, -one, 1.0), Error);
}
