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

#include "oracles.hpp"
#include "simsec/grassmann.hpp"

using namespace simsec;
using Catch::Approx;

namespace {

ComplexMatrix unit_columns(Index n, std::initializer_list<Index> rows)
{
    ComplexMatrix M = ComplexMatrix::Zero(n, Index(rows.size()));
    Index j = 0;
    for (Index r : rows)
        M(r, j++) = 1.0;
    return M;
}

GrassmannPoint haar_point(Index n_t, Index n_r, Rng &rng)
{
    return GrassmannPoint(random_truncated_unitary(n_t, n_r, rng));
}

template <class F>
ErrorKind kind_of(F &&f)
{
    try
    {
        f();
    }
    catch (const Error &e)
    {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::invalid_input;
}

} // namespace

TEST_CASE("chordal distance examples", "[grassmann]")
{
    const GrassmannPoint A(unit_columns(4, {0, 1}));
    const GrassmannPoint B(unit_columns(4, {2, 3}));
    CHECK(chordal_distance(A, A) == Approx(0.0).margin(1e-15));
    CHECK(chordal_distance(A, B) == Approx(std::sqrt(2.0)).margin(1e-14));

    ComplexMatrix d(2, 1);
    d << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    CHECK(chordal_distance(GrassmannPoint(unit_columns(2, {0})), GrassmannPoint(d)) ==
          Approx(1.0 / std::sqrt(2.0)).margin(1e-14));

    CHECK_THROWS_AS(chordal_distance(A, GrassmannPoint(unit_columns(3, {0, 1}))), Error);
}

TEST_CASE("chordal distance equals the principal-angle form", "[grassmann]")
{
    Rng rng(41);
    for (int t = 0; t < 500; ++t)
    {
        const Index n_r = 1 + t % 3, n_t = n_r + 1 + (t / 3) % 4;
        const GrassmannPoint A = haar_point(n_t, n_r, rng), B = haar_point(n_t, n_r, rng);
        const double d = chordal_distance(A, B);
        REQUIRE(std::abs(d - oracle::chordal_principal_angles(A.basis(), B.basis())) < 1e-10);
        REQUIRE(d <= std::sqrt(double(std::min(n_r, n_t - n_r))) + 1e-12);
    }
}

TEST_CASE("chordal distance is a metric and ignores right-unitary factors", "[grassmann]")
{
    Rng rng(43);
    for (int t = 0; t < 1000; ++t)
    {
        const Index n_r = 1 + t % 3, n_t = 2 * n_r + t % 2;
        const GrassmannPoint A = haar_point(n_t, n_r, rng);
        const GrassmannPoint B = haar_point(n_t, n_r, rng);
        const GrassmannPoint C = haar_point(n_t, n_r, rng);
        const double ab = chordal_distance(A, B);
        REQUIRE(std::abs(ab - chordal_distance(B, A)) < 1e-12);
        REQUIRE(chordal_distance(A, C) <= ab + chordal_distance(B, C) + 1e-9);

        const GrassmannPoint AQ(A.basis() * random_truncated_unitary(n_r, n_r, rng));
        REQUIRE(chordal_distance(A, AQ) < 1e-10);
    }
}

TEST_CASE("GrassmannPoint requires orthonormal columns", "[grassmann]")
{
    ComplexMatrix M = unit_columns(3, {0, 1});
    M(0, 1) = 0.5;
    CHECK(kind_of([&] { GrassmannPoint p(M); }) == ErrorKind::invalid_input);
    const GrassmannPoint s = GrassmannPoint::span_of(M);
    CHECK(chordal_distance(s, GrassmannPoint(unit_columns(3, {0, 1}))) < 1e-14);
}

TEST_CASE("ball volume coefficient", "[grassmann]")
{
    CHECK(ball_volume_coefficient(2, 1) == Approx(1.0).epsilon(1e-12));
    CHECK(ball_volume_coefficient(4, 2) == Approx(0.5).epsilon(1e-12));
    CHECK(ball_volume_coefficient(6, 3) == Approx(1.0 / 42.0).epsilon(1e-12));
    for (int n_t = 2; n_t <= 8; ++n_t)
        for (int n_r = 1; n_r < n_t; ++n_r)
            REQUIRE(ball_volume_coefficient(n_t, n_r) ==
                    Approx(oracle::ball_coefficient_factorials(n_t, n_r)).epsilon(1e-10));
    CHECK_THROWS_AS(ball_volume_coefficient(3, 3), Error);
    // stays finite where factorials overflow a double
    CHECK(std::isfinite(ball_volume_coefficient(200, 100)));
}

TEST_CASE("quantization error bound", "[grassmann]")
{
    CHECK(manifold_dimension(4, 2) == 8);
    CHECK(quant_error_bound(40, 4, 2) == Approx(2.0 * std::exp2(-39.0 / 8.0)).epsilon(1e-12));
    CHECK(quant_error_bound(40, 4, 2) == Approx(0.0681567).margin(1e-6));

    double prev = quant_error_bound(1, 6, 3);
    for (std::int64_t nf = 2; nf < 400; nf += 7)
    {
        const double d = quant_error_bound(nf, 6, 3);
        REQUIRE(d < prev);
        prev = d;
    }
    CHECK(quant_error_bound(100000, 4, 2) < 1e-100);

    for (auto [n_t, n_r] : {std::pair{4, 2}, {6, 3}, {8, 4}, {5, 1}})
        for (std::int64_t nf : {1, 10, 40, 90})
        {
            const double N = manifold_dimension(n_t, n_r);
            const double c = ball_volume_coefficient(n_t, n_r);
            REQUIRE(quant_error_bound(nf, n_t, n_r) * std::pow(c * std::exp2(double(nf)), 1.0 / N) ==
                    Approx(2.0).epsilon(1e-12));
        }
}

TEST_CASE("codebook generation", "[grassmann]")
{
    Rng rng(47);
    const Codebook one = codebook_generate(4, 2, 1, rng);
    REQUIRE(one.points.size() == 2);
    for (const auto &p : one.points)
        CHECK((p.basis().adjoint() * p.basis() - ComplexMatrix::Identity(2, 2)).norm() < 1e-10);

    Rng a(5), b(5);
    const Codebook x = codebook_generate(4, 2, 8, a), y = codebook_generate(4, 2, 8, b);
    REQUIRE(x.points.size() == 256);
    for (std::size_t i = 0; i < x.points.size(); ++i)
        REQUIRE(x.points[i].basis() == y.points[i].basis());

    const Codebook ten = codebook_generate(4, 2, 10, rng);
    double min_pair = 1e9;
    for (std::size_t i = 0; i < 64; ++i)
        for (std::size_t j = i + 1; j < ten.points.size(); ++j)
            min_pair = std::min(min_pair, chordal_distance(ten.points[i], ten.points[j]));
    CHECK(min_pair > 0.0);

    CHECK(kind_of([&] { codebook_generate(4, 2, max_exhaustive_bits + 1, rng); }) ==
          ErrorKind::codebook_too_large);
}

TEST_CASE("quantize examples", "[grassmann]")
{
    Rng rng(53);
    Codebook book = codebook_generate(4, 2, 4, rng);
    const GrassmannPoint F = haar_point(4, 2, rng);
    book.points[5] = F;
    const QuantizeResult q = quantize(F, book);
    CHECK(q.index == 5);
    CHECK(q.distance == Approx(0.0).margin(1e-12));

    Codebook axes{{GrassmannPoint(unit_columns(2, {0})), GrassmannPoint(unit_columns(2, {1}))}, 1, 2, 1};
    CHECK(quantize(GrassmannPoint(unit_columns(2, {0})), axes).index == 0);
    CHECK(quantize(GrassmannPoint(unit_columns(2, {1})), axes).index == 1);

    // equidistant from both codewords: lowest index wins
    ComplexMatrix d(2, 1);
    d << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    CHECK(quantize(GrassmannPoint(d), axes).index == 0);

    Codebook empty{{}, 0, 4, 2};
    CHECK(kind_of([&] { quantize(F, empty); }) == ErrorKind::empty_codebook);
}

TEST_CASE("quantize agrees with a full scan", "[grassmann]")
{
    Rng rng(59);
    const Codebook book = codebook_generate(4, 2, 8, rng);
    for (int t = 0; t < 50; ++t)
    {
        const GrassmannPoint F = haar_point(4, 2, rng);
        const QuantizeResult q = quantize(F, book);
        REQUIRE(q.index == oracle::argmin_scan(book.points, F));
        for (const auto &p : book.points)
            REQUIRE(q.distance <= chordal_distance(F, p) + 1e-12);
    }
}

TEST_CASE("mean quantization distance shrinks with codebook size", "[grassmann]")
{
    Rng rng(61);
    double prev = 1e9;
    for (int bits : {4, 8, 12})
    {
        double acc = 0.0;
        const int draws = 200;
        for (int t = 0; t < draws; ++t)
        {
            // one codebook per 50 draws keeps the 12-bit case affordable
            static Codebook book;
            if (t % 50 == 0)
                book = codebook_generate(4, 1, bits, rng);
            acc += quantize(haar_point(4, 1, rng), book).distance;
        }
        const double mean = acc / draws;
        CHECK(mean < prev);
        prev = mean;
    }
}

TEST_CASE("perturb_to_distance hits its target", "[grassmann]")
{
    Rng rng(67);
    const GrassmannPoint F = haar_point(4, 2, rng);
    const GrassmannPoint tiny = perturb_quantize(F, 1000000, rng);
    CHECK(chordal_distance(F, tiny) < 1e-4);

    const GrassmannPoint q = perturb_quantize(F, 40, rng);
    CHECK(chordal_distance(F, q) == Approx(0.0681567).margin(1e-6));
    CHECK(std::abs(chordal_distance(F, q) - quant_error_bound(40, 4, 2)) < 1e-6);

    for (int t = 0; t < 1000; ++t)
    {
        const Index n_r = 1 + t % 4, n_t = 2 * n_r + (t / 4) % 2;
        const GrassmannPoint G = haar_point(n_t, n_r, rng);
        const double target = std::uniform_real_distribution<double>(0.0, 0.99)(rng) * std::sqrt(double(n_r));
        const GrassmannPoint H = perturb_to_distance(G, target, rng);
        REQUIRE(std::abs(chordal_distance(G, H) - target) < 1e-6);
        REQUIRE((H.basis().adjoint() * H.basis() - ComplexMatrix::Identity(n_r, n_r)).norm() < 1e-10);
    }
}

TEST_CASE("perturb_quantize clamps below the diameter", "[grassmann]")
{
    Rng rng(71);
    const GrassmannPoint F = haar_point(6, 3, rng);
    const GrassmannPoint q = perturb_quantize(F, 1, rng);
    CHECK(chordal_distance(F, q) == Approx(0.999 * std::sqrt(3.0)).margin(1e-6));
}

TEST_CASE("perturb_to_distance rejects bad requests", "[grassmann]")
{
    Rng rng(73);
    CHECK_THROWS_AS(perturb_to_distance(haar_point(3, 2, rng), 0.1, rng), Error);
    CHECK_THROWS_AS(perturb_to_distance(haar_point(4, 2, rng), 2.0, rng), Error);
    CHECK_THROWS_AS(perturb_to_distance(haar_point(4, 2, rng), -0.1, rng), Error);
}

TEST_CASE("feedback bit schedules", "[grassmann]")
{
    const double P = std::exp2(10.0);
    CHECK(feedback_bits(P, FeedbackSchedule::scaled(0.0), 4, 2) == 40);
    CHECK(feedback_bits(P, FeedbackSchedule::scaled(0.5), 4, 2) == 60);
    for (double p : {0.5, 1.0, 1e3, 1e9})
        CHECK(feedback_bits(p, FeedbackSchedule::fixed(30), 6, 3) == 30);
    // 60 dB, (8,4): 16 * log2(1e6) = 318.9...
    CHECK(feedback_bits(1e6, FeedbackSchedule::scaled(0.0), 8, 4) == 319);

    CHECK(kind_of([] { feedback_bits(1.0, FeedbackSchedule::scaled(0.0), 4, 2); }) == ErrorKind::invalid_input);
    CHECK(kind_of([] { FeedbackSchedule::scaled(-0.1).validate(); }) == ErrorKind::config);
    CHECK(kind_of([] { FeedbackSchedule::fixed(0).validate(); }) == ErrorKind::config);
}
