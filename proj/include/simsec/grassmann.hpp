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

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "simsec/linalg.hpp"

namespace simsec {

// A point of the Grassmann manifold G(n_t, n_r), stored through an
// orthonormal n_t x n_r representative. Two representatives of the same
// subspace differ by a right unitary factor; compare with chordal_distance.
class GrassmannPoint
{
public:
    // Throws invalid_input unless basis^* basis = I to 1e-10.
    explicit GrassmannPoint(ComplexMatrix basis);

    // Orthonormalizes a full-column-rank tall matrix first.
    static GrassmannPoint span_of(const ComplexMatrix &A);

    const ComplexMatrix &basis() const noexcept { return basis_; }
    Index ambient_dim() const noexcept { return basis_.rows(); }
    Index subspace_dim() const noexcept { return basis_.cols(); }
    ComplexMatrix projector() const { return basis_ * basis_.adjoint(); }

private:
    ComplexMatrix basis_;
};

struct Codebook
{
    std::vector<GrassmannPoint> points;
    int bits = 0;
    Index n_t = 0;
    Index n_r = 0;
};

struct FeedbackSchedule
{
    enum class Mode { fixed, scaled };

    Mode mode = Mode::scaled;
    std::int64_t fixed_bits = 0; // used in fixed mode
    double epsilon = 0.0;        // used in scaled mode

    static FeedbackSchedule fixed(std::int64_t bits);
    static FeedbackSchedule scaled(double epsilon);
    void validate() const;
};

// (1/sqrt 2) || S S^* - F F^* ||_F
double chordal_distance(const GrassmannPoint &S, const GrassmannPoint &F);

// Coefficient c of the metric-ball volume on G(n_t, n_r):
//   c = 1/(n_r (n_t - n_r))! * prod_{i=1..n_r} (n_t - i)! / (n_r - i)!
// computed with lgamma.
double ball_volume_coefficient(int n_t, int n_r);

// Real dimension N = 2 n_r (n_t - n_r) of G(n_t, n_r).
int manifold_dimension(int n_t, int n_r);

// Leading term of the worst-case quantization error of an N_f-bit packing
// codebook: delta = 2 / (c 2^{N_f})^{1/N}.
double quant_error_bound(std::int64_t n_f, int n_t, int n_r);

inline constexpr int max_exhaustive_bits = 20;

// 2^bits independent Haar-random points. Used as a stand-in for a packing in
// small-N_f experiments; bits > 20 is rejected.
Codebook codebook_generate(int n_t, int n_r, int bits, Rng &rng);

struct QuantizeResult
{
    GrassmannPoint point;
    std::size_t index;
    double distance;
};

// Minimum chordal-distance codeword; ties resolve to the lowest index.
QuantizeResult quantize(const GrassmannPoint &F, const Codebook &book);

// Returns orth(F + eps Z) with Z a Gaussian direction projected onto the
// orthogonal complement of span(F), eps found by bisection so that the
// chordal distance to F equals `target` within 1e-9. Requires n_t >= 2 n_r
// and 0 <= target < sqrt(n_r).
GrassmannPoint perturb_to_distance(const GrassmannPoint &F, double target, Rng &rng);

// Quantizer surrogate: perturbs F to distance min(delta(N_f), 0.999 sqrt(n_r)).
GrassmannPoint perturb_quantize(const GrassmannPoint &F, std::int64_t n_f, Rng &rng);

// Feedback bits at transmit power P. Scaled mode returns
// ceil((1 + eps) n_r (n_t - n_r) log2 P) and requires P > 1.
std::int64_t feedback_bits(double P, const FeedbackSchedule &schedule, int n_t, int n_r);

} // namespace simsec
