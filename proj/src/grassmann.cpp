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

#include "simsec/grassmann.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace simsec {

GrassmannPoint::GrassmannPoint(ComplexMatrix basis) : basis_(std::move(basis))
{
    const Index n = basis_.cols();
    if (n < 1 || basis_.rows() < n)
        throw Error(ErrorKind::invalid_shape, "GrassmannPoint: basis must be tall with at least one column");
    if (!all_finite(basis_))
        throw Error(ErrorKind::invalid_input, "GrassmannPoint: non-finite basis");
    const double err = (basis_.adjoint() * basis_ - ComplexMatrix::Identity(n, n)).norm();
    if (err > 1e-10)
    {
        std::ostringstream os;
        os << "GrassmannPoint: basis is not orthonormal (||F^*F - I|| = " << err << ")";
        throw Error(ErrorKind::invalid_input, os.str());
    }
}

GrassmannPoint GrassmannPoint::span_of(const ComplexMatrix &A)
{
    return GrassmannPoint(qr_tall(A).F);
}

FeedbackSchedule FeedbackSchedule::fixed(std::int64_t bits)
{
    FeedbackSchedule s;
    s.mode = Mode::fixed;
    s.fixed_bits = bits;
    s.validate();
    return s;
}

FeedbackSchedule FeedbackSchedule::scaled(double epsilon)
{
    FeedbackSchedule s;
    s.mode = Mode::scaled;
    s.epsilon = epsilon;
    s.validate();
    return s;
}

void FeedbackSchedule::validate() const
{
    if (mode == Mode::fixed && fixed_bits < 1)
        throw Error(ErrorKind::config, "feedback schedule: fixed mode needs at least one bit");
    if (mode == Mode::scaled && !(epsilon >= 0.0))
        throw Error(ErrorKind::config, "feedback schedule: epsilon must be nonnegative");
}

double chordal_distance(const GrassmannPoint &S, const GrassmannPoint &F)
{
    if (S.ambient_dim() != F.ambient_dim() || S.subspace_dim() != F.subspace_dim())
        throw Error(ErrorKind::invalid_shape, "chordal_distance: points live on different manifolds");
    return (S.projector() - F.projector()).norm() / std::sqrt(2.0);
}

double ball_volume_coefficient(int n_t, int n_r)
{
    if (n_r < 1 || n_t <= n_r)
        throw Error(ErrorKind::invalid_input, "ball_volume_coefficient: need n_t > n_r >= 1");
    // lgamma(k + 1) = ln k!
    double log_c = -std::lgamma(double(n_r) * (n_t - n_r) + 1.0);
    for (int i = 1; i <= n_r; ++i)
        log_c += std::lgamma(double(n_t - i) + 1.0) - std::lgamma(double(n_r - i) + 1.0);
    return std::exp(log_c);
}

int manifold_dimension(int n_t, int n_r)
{
    return 2 * n_r * (n_t - n_r);
}

double quant_error_bound(std::int64_t n_f, int n_t, int n_r)
{
    if (n_f < 1)
        throw Error(ErrorKind::invalid_input, "quant_error_bound: need at least one feedback bit");
    const double c = ball_volume_coefficient(n_t, n_r);
    const double N = manifold_dimension(n_t, n_r);
    // 2 c^{-1/N} 2^{-N_f/N}, split to stay finite for large N_f.
    return 2.0 * std::pow(c, -1.0 / N) * std::exp2(-double(n_f) / N);
}

Codebook codebook_generate(int n_t, int n_r, int bits, Rng &rng)
{
    if (bits < 1)
        throw Error(ErrorKind::invalid_input, "codebook_generate: need at least one bit");
    if (bits > max_exhaustive_bits)
        throw Error(ErrorKind::codebook_too_large,
                    "codebook_generate: more than 20 bits is not enumerable; use perturb_quantize");
    if (n_r < 1 || n_t < n_r)
        throw Error(ErrorKind::invalid_shape, "codebook_generate: need n_t >= n_r >= 1");

    Codebook book;
    book.bits = bits;
    book.n_t = n_t;
    book.n_r = n_r;
    const std::size_t size = std::size_t{1} << bits;
    book.points.reserve(size);
    for (std::size_t i = 0; i < size; ++i)
        book.points.emplace_back(random_truncated_unitary(n_t, n_r, rng));
    return book;
}

QuantizeResult quantize(const GrassmannPoint &F, const Codebook &book)
{
    if (book.points.empty())
        throw Error(ErrorKind::empty_codebook, "quantize: empty codebook");
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < book.points.size(); ++i)
    {
        const double d = chordal_distance(book.points[i], F);
        if (d < best_d)
        {
            best_d = d;
            best = i;
        }
    }
    return {book.points[best], best, best_d};
}

GrassmannPoint perturb_to_distance(const GrassmannPoint &F, double target, Rng &rng)
{
    const Index n_t = F.ambient_dim(), n_r = F.subspace_dim();
    if (n_t < 2 * n_r)
        throw Error(ErrorKind::invalid_shape, "perturb_to_distance: requires n_t >= 2 n_r");
    if (!(target >= 0.0) || target >= std::sqrt(double(n_r)))
        throw Error(ErrorKind::invalid_input, "perturb_to_distance: target outside [0, sqrt(n_r))");
    if (target == 0.0)
        return F;

    const ComplexMatrix &basis = F.basis();
    const ComplexMatrix complement = ComplexMatrix::Identity(n_t, n_t) - F.projector();

    constexpr int max_attempts = 8;
    for (int attempt = 0; attempt < max_attempts; ++attempt)
    {
        const ComplexMatrix Z = complement * random_gaussian_matrix(n_t, n_r, rng);
        auto at = [&](double eps) {
            return GrassmannPoint::span_of(basis + eps * Z);
        };
        auto dist = [&](double eps) { return chordal_distance(at(eps), F); };

        // d(eps) increases strictly from 0 towards sqrt(n_r).
        double lo = 0.0, hi = target;
        bool bracketed = false;
        try
        {
            for (int k = 0; k < 200; ++k)
            {
                if (dist(hi) >= target)
                {
                    bracketed = true;
                    break;
                }
                lo = hi;
                hi *= 2.0;
            }
            if (!bracketed)
                continue;

            for (int k = 0; k < 200 && hi - lo > 1e-15 * hi; ++k)
            {
                const double mid = 0.5 * (lo + hi);
                const double d = dist(mid);
                if (std::abs(d - target) <= 1e-13 * std::max(1.0, target))
                    return at(mid);
                (d < target ? lo : hi) = mid;
            }
            const double mid = 0.5 * (lo + hi);
            GrassmannPoint out = at(mid);
            if (std::abs(chordal_distance(out, F) - target) <= 1e-9)
                return out;
        }
        catch (const Error &e)
        {
            if (e.kind() != ErrorKind::degenerate_channel)
                throw;
        }
    }
    throw Error(ErrorKind::bracket_failure, "perturb_to_distance: could not reach target distance");
}

GrassmannPoint perturb_quantize(const GrassmannPoint &F, std::int64_t n_f, Rng &rng)
{
    const int n_t = int(F.ambient_dim()), n_r = int(F.subspace_dim());
    const double diameter = std::sqrt(double(std::min(n_r, n_t - n_r)));
    const double target = std::min(quant_error_bound(n_f, n_t, n_r), 0.999 * diameter);
    return perturb_to_distance(F, target, rng);
}

std::int64_t feedback_bits(double P, const FeedbackSchedule &schedule, int n_t, int n_r)
{
    schedule.validate();
    if (schedule.mode == FeedbackSchedule::Mode::fixed)
        return schedule.fixed_bits;
    if (!(P > 1.0))
        throw Error(ErrorKind::invalid_input, "feedback_bits: scaled schedule needs P > 1");
    const double exact = (1.0 + schedule.epsilon) * double(n_r) * double(n_t - n_r) * std::log2(P);
    // Absorb round-off so that exact integers are not bumped up by one.
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(exact - 1e-9)));
}

} // namespace simsec
