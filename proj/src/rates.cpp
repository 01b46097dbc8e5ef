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

#include "simsec/rates.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace simsec {

namespace {

double ld(const ComplexMatrix &M)
{
    return logdet_pd(hermitian_part(M));
}

ComplexMatrix eye(Index n)
{
    return ComplexMatrix::Identity(n, n);
}

// log2 det(rho He W1 K W1^* He^* + a He W2 W2^* He^* + s I) - log2 det(a He W2 W2^* He^* + s I)
double eve_term(const ComplexMatrix &He, const ComplexMatrix &W1, const ComplexMatrix &W2,
                const PowerPolicy &policy)
{
    const ComplexMatrix HeW1 = He * W1;
    const ComplexMatrix HeW2 = He * W2;
    const ComplexMatrix base =
        policy.an_power(int(W2.cols())) * HeW2 * HeW2.adjoint() + policy.sigma2_eve * eye(He.rows());
    return ld(policy.rho * policy.signal_power() * HeW1 * HeW1.adjoint() + base) - ld(base);
}

ComplexMatrix filtered_channel(const ReceiverFilters &filters, const ComplexMatrix &Hd)
{
    return filters.G.adjoint() * filters.V.adjoint() * Hd;
}

} // namespace

RateTerms secrecy_rate_perfect_basic(const ChannelSet &channels, const PowerPolicy &policy,
                                     const AntennaConfig &config)
{
    config.validate();
    policy.validate(config.n_r);
    const SvdResult dec = svd(channels.Hd);
    const Index n_r = config.n_r, n_t = config.n_t;
    if (dec.singular_values(n_r - 1) < rank_tolerance * dec.singular_values(0))
        throw Error(ErrorKind::degenerate_channel, "secrecy_rate_perfect_basic: Hd is rank deficient");

    const ComplexMatrix V = rx_nuller(channels.Hj);
    const ComplexMatrix H = V.adjoint() * dec.U * dec.singular_values.head(n_r).cast<Complex>().asDiagonal();
    const ComplexMatrix V1 = dec.V.leftCols(n_r);
    const ComplexMatrix V0 = dec.V.rightCols(n_t - n_r);

    RateTerms out;
    out.t_plus = ld(eye(H.rows()) + (policy.rho / policy.sigma2) * policy.signal_power() * H * H.adjoint());
    out.t_minus = eve_term(channels.He, V1, V0, policy);
    return out;
}

RateTerms secrecy_rate_perfect_G(const ChannelSet &channels, const Precoders &perfect,
                                 const ReceiverFilters &filters, const PowerPolicy &policy)
{
    const ComplexMatrix ZW1 = filtered_channel(filters, channels.Hd) * perfect.W1;
    const ComplexMatrix noise = policy.sigma2 * filters.G.adjoint() * filters.G;

    RateTerms out;
    out.t_plus = ld(policy.rho * policy.signal_power() * ZW1 * ZW1.adjoint() + noise) - ld(noise);
    out.t_minus = eve_term(channels.He, perfect.W1, perfect.W2, policy);
    return out;
}

RateTerms secrecy_rate_quantized_G(const ChannelSet &channels, const Precoders &quantized,
                                   const ReceiverFilters &filters, const PowerPolicy &policy)
{
    const ComplexMatrix Z = filtered_channel(filters, channels.Hd);
    const ComplexMatrix ZW1 = Z * quantized.W1;
    const ComplexMatrix ZW2 = Z * quantized.W2;
    const ComplexMatrix base = policy.an_power(int(quantized.W2.cols())) * ZW2 * ZW2.adjoint() +
                               policy.sigma2 * filters.G.adjoint() * filters.G;

    RateTerms out;
    out.t_plus = ld(policy.rho * policy.signal_power() * ZW1 * ZW1.adjoint() + base) - ld(base);
    out.t_minus = eve_term(channels.He, quantized.W1, quantized.W2, policy);
    return out;
}

double eve_rate_limit(const ChannelSet &channels, const Precoders &perfect,
                      const PowerPolicy &policy, const AntennaConfig &config)
{
    const ComplexMatrix HeW1 = channels.He * perfect.W1;
    const ComplexMatrix HeW2 = channels.He * perfect.W2;
    const ComplexMatrix an_gram = HeW2 * HeW2.adjoint();
    const double scale = policy.rho / (1.0 - policy.rho) * config.an_dim() * policy.kxs_scale;
    // log2 det(I + s A B^{-1}) = log2 det(B + s A) - log2 det(B)
    return ld(an_gram + scale * HeW1 * HeW1.adjoint()) - ld(an_gram);
}

double beta_P(const ChannelSet &channels, const ReceiverFilters &filters,
              const Precoders &quantized, const PowerPolicy &policy)
{
    const ComplexMatrix Z = filtered_channel(filters, channels.Hd);
    const ComplexMatrix ZW1 = Z * quantized.W1;
    const ComplexMatrix ZW2 = Z * quantized.W2;
    const ComplexMatrix signal = policy.rho * policy.P * ZW1 * ZW1.adjoint();
    const ComplexMatrix M2 = policy.an_power(int(quantized.W2.cols())) * ZW2 * ZW2.adjoint();
    const ComplexMatrix noise = policy.sigma2 * filters.G.adjoint() * filters.G;
    return ld(signal + M2 + noise) - ld(signal + noise);
}

LogdetPerturbation logdet_perturbation_check(const ComplexMatrix &A, const ComplexMatrix &Delta)
{
    if (A.rows() != Delta.rows() || A.cols() != Delta.cols())
        throw Error(ErrorKind::invalid_shape, "logdet_perturbation_check: shape mismatch");
    const ComplexMatrix sum = A + Delta;
    const double lhs = (ld(A + Delta) - ld(A)) * std::numbers::ln2;

    Eigen::LLT<ComplexMatrix> llt_a(hermitian_part(A));
    Eigen::LLT<ComplexMatrix> llt_sum(hermitian_part(sum));
    const double upper = llt_a.solve(Delta).trace().real();
    // tr(D (A+D)^{-1}) = tr((A+D)^{-1} D)
    const double lower = llt_sum.solve(Delta).trace().real();
    return {lhs, upper, lower};
}

double logdet_variational_objective(const ComplexMatrix &S, const ComplexMatrix &E)
{
    return -(S * E).trace().real() + ld(S) * std::numbers::ln2 + double(S.rows());
}

SdofEstimate sdof_fit(std::span<const double> snr_db, std::span<const double> rate, SdofWindow window)
{
    if (snr_db.size() != rate.size())
        throw Error(ErrorKind::invalid_input, "sdof_fit: snr and rate lengths differ");
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < snr_db.size(); ++i)
    {
        if (snr_db[i] < window.snr_lo - 1e-9 || snr_db[i] > window.snr_hi + 1e-9)
            continue;
        xs.push_back(snr_db[i] / 10.0 * std::log2(10.0)); // log2 P
        ys.push_back(rate[i]);
    }
    if (xs.size() < 3)
        throw Error(ErrorKind::invalid_input, "sdof_fit: fewer than 3 points in window");

    const double n = double(xs.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
    {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i)
    {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (!(sxx > 0.0))
        throw Error(ErrorKind::invalid_input, "sdof_fit: window holds a single SNR value");

    SdofEstimate est;
    est.slope = sxy / sxx;
    est.intercept = my - est.slope * mx;
    est.window = window;
    est.points = int(xs.size());
    return est;
}

SdofEstimate sdof_fit(std::span<const RateSample> samples, SdofWindow window, RateCurve curve)
{
    std::vector<double> snr, rate;
    snr.reserve(samples.size());
    rate.reserve(samples.size());
    for (const auto &s : samples)
    {
        snr.push_back(s.snr_db);
        rate.push_back(curve == RateCurve::perfect ? s.r_perfect : s.r_quantized);
    }
    return sdof_fit(snr, rate, window);
}

} // namespace simsec
