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

#include <cstdint>

#include "simsec/grassmann.hpp"
#include "simsec/linalg.hpp"

namespace simsec {

struct AntennaConfig
{
    int n_t = 0; // transmitter
    int n_r = 0; // legitimate receiver
    int n_j = 0; // jammer
    int n_e = 0; // eavesdropper (after jammer projection)

    int d_s() const noexcept { return n_r - n_j; }
    int manifold_dim() const noexcept { return manifold_dimension(n_t, n_r); }
    int an_dim() const noexcept { return n_t - n_r; }

    // n_t > n_r > n_j >= 0, 1 <= n_e <= n_t - n_r
    void validate() const;

    friend bool operator==(const AntennaConfig &, const AntennaConfig &) = default;
};

// Power split and noise levels. K_xs = kxs_scale * P * I and
// K_an = P / (n_t - n_r) * I.
struct PowerPolicy
{
    double P = 1.0;
    double rho = 0.5;
    double sigma2 = 1.0;
    double sigma2_eve = 1.0;
    double kxs_scale = 1.0;

    static PowerPolicy with_defaults(double P, int n_r, double rho = 0.5);
    void validate(int n_r) const;

    double signal_power() const noexcept { return kxs_scale * P; }
    double an_power(int an_dim) const noexcept { return (1.0 - rho) * P / an_dim; }
};

struct ChannelSet
{
    ComplexMatrix Hd; // n_r x n_t
    ComplexMatrix He; // n_e x n_t
    ComplexMatrix Hj; // n_r x n_j, zero columns when n_j = 0
};

enum class CsiMode { perfect, quantized };

struct Precoders
{
    ComplexMatrix W1; // n_t x n_r, information
    ComplexMatrix W2; // n_t x (n_t - n_r), artificial noise
    CsiMode mode = CsiMode::perfect;
};

struct ReceiverFilters
{
    ComplexMatrix V; // n_r x d_s jammer nuller
    ComplexMatrix B; // n_t x d_s
    ComplexMatrix G; // d_s x d_s post-filter (G^* is applied)
    ComplexMatrix F; // n_t x n_r, Hd^* = F C
    ComplexMatrix C; // n_r x n_r
};

ChannelSet sample_channels(const AntennaConfig &config, Rng &rng);

// Eavesdropper channel after projecting out the jammer: U0(Gj)^* Ge.
ComplexMatrix eve_effective_channel(const ComplexMatrix &Ge, const ComplexMatrix &Gj);

// W1 = V1(Hd), W2 = V0(Hd) from the SVD of Hd.
Precoders tx_precoders_perfect(const ComplexMatrix &Hd);

// W1 = Fhat, W2 = orthonormal basis of Nul(Fhat^*).
Precoders tx_precoders_quantized(const GrassmannPoint &Fhat);

// V = U0(Hj); identity when the jammer has no antennas.
ComplexMatrix rx_nuller(const ComplexMatrix &Hj);

// Subspace fed back to the transmitter: span(Hd^*).
GrassmannPoint channel_subspace(const ComplexMatrix &Hd);

// G^* = B^* F C V (V^* C^* C V)^{-1} with (F, C) = qr_tall(Hd^*), V = rx_nuller(Hj).
ReceiverFilters rx_postfilter(const ComplexMatrix &Hd, const ComplexMatrix &Hj, const ComplexMatrix &B);

// Same, with B drawn Haar-uniformly (n_t x d_s).
ReceiverFilters rx_postfilter(const ComplexMatrix &Hd, const ComplexMatrix &Hj, Rng &rng);

// E||e_L||^2 = (1 - rho) P / (n_t - n_r) ||G^* V^* Hd W2Q||_F^2
double leakage_power(const ReceiverFilters &filters, const ComplexMatrix &Hd,
                     const ComplexMatrix &W2Q, const PowerPolicy &policy);

// 2 (1 - rho) P / (n_t - n_r) * delta(N_f)^2
double leakage_bound(const PowerPolicy &policy, std::int64_t n_f, const AntennaConfig &config);

} // namespace simsec
