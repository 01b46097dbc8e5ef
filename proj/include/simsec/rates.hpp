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

#include <cmath>
#include <cstdint>
#include <span>

#include "simsec/transceiver.hpp"

namespace simsec {

// A secrecy rate split into the legitimate-receiver term and the
// eavesdropper term (bits per channel use).
struct RateTerms
{
    double t_plus = 0.0;
    double t_minus = 0.0;

    double raw() const noexcept { return t_plus - t_minus; }
    double clipped() const noexcept { return raw() > 0.0 ? raw() : 0.0; }
};

struct RateSample
{
    double P = 0.0;
    double snr_db = 0.0;
    double r_perfect = 0.0;
    double r_quantized = 0.0;
    double r_perfect_raw = 0.0;
    double r_quantized_raw = 0.0;
    double gap = 0.0; // r_perfect_raw - r_quantized_raw
    double leakage = 0.0;
    std::int64_t nf_bits = 0;
};

struct SdofWindow
{
    double snr_lo = 0.0;
    double snr_hi = 0.0;
};

struct SdofEstimate
{
    double slope = 0.0;     // bits per log2 P
    double intercept = 0.0; // bits
    SdofWindow window;
    int points = 0;
};

enum class RateCurve { perfect, quantized };

// Perfect-CSI rate without receive post-filtering, written through the SVD of
// Hd: log2 det(I + rho/sigma^2 H K H^*) minus the eavesdropper term, with
// H = V^* U(Hd) Sigma_1(Hd).
RateTerms secrecy_rate_perfect_basic(const ChannelSet &channels, const PowerPolicy &policy,
                                     const AntennaConfig &config);

// Perfect-CSI rate after the V then G^* receive chain.
RateTerms secrecy_rate_perfect_G(const ChannelSet &channels, const Precoders &perfect,
                                 const ReceiverFilters &filters, const PowerPolicy &policy);

// Quantized-CSI rate: the artificial noise leaking through W2Q enters both
// determinants of the receiver term.
RateTerms secrecy_rate_quantized_G(const ChannelSet &channels, const Precoders &quantized,
                                   const ReceiverFilters &filters, const PowerPolicy &policy);

// High-power limit of the eavesdropper term for perfect precoders. Needs
// He W2 W2^* He^* invertible (n_e <= n_t - n_r).
double eve_rate_limit(const ChannelSet &channels, const Precoders &perfect,
                      const PowerPolicy &policy, const AntennaConfig &config);

// Difference of log-dets with and without the leakage matrix M2, K_xs = P I.
// Nonnegative by construction; tends to zero as P grows under the N/2 log2 P
// feedback schedule.
double beta_P(const ChannelSet &channels, const ReceiverFilters &filters,
              const Precoders &quantized, const PowerPolicy &policy);

struct LogdetPerturbation
{
    double lhs;   // ln det(A + D) - ln det A
    double upper; // tr(A^{-1} D)
    double lower; // tr(D (A + D)^{-1})
};

LogdetPerturbation logdet_perturbation_check(const ComplexMatrix &A, const ComplexMatrix &Delta);

// -tr(S E) + ln det S + n; maximized over S > 0 at S = E^{-1} with value ln det E^{-1}.
double logdet_variational_objective(const ComplexMatrix &S, const ComplexMatrix &E);

// Least-squares slope of rate against log2 P over snr_db in [lo, hi].
SdofEstimate sdof_fit(std::span<const double> snr_db, std::span<const double> rate, SdofWindow window);
SdofEstimate sdof_fit(std::span<const RateSample> samples, SdofWindow window,
                      RateCurve curve = RateCurve::perfect);

inline double power_from_db(double snr_db) { return std::pow(10.0, snr_db / 10.0); }

} // namespace simsec
