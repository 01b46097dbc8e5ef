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

#include "simsec/harness.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace simsec {

bool VerifyReport::ok() const noexcept
{
    for (const auto &c : checks)
        if (!c.ok())
            return false;
    return true;
}

namespace {

constexpr std::array<AntennaConfig, 3> verify_configs = {{
    {4, 2, 1, 2},
    {6, 3, 1, 3},
    {8, 4, 1, 4},
}};

// Records one instance; `value` is a residual that must stay at or below `limit`.
void record(CheckOutcome &c, double value, double limit)
{
    c.worst = std::max(c.worst, value);
    (value <= limit ? c.passed : c.failed) += 1;
}

ComplexMatrix random_pd(Index n, Rng &rng)
{
    const ComplexMatrix M = random_gaussian_matrix(n, n, rng);
    return hermitian_part(M * M.adjoint()) + 0.1 * ComplexMatrix::Identity(n, n);
}

ComplexMatrix random_unitary(Index n, Rng &rng)
{
    return random_truncated_unitary(n, n, rng);
}

} // namespace

VerifyReport run_verification(int trials, std::uint64_t seed)
{
    if (trials < 1)
        throw Error(ErrorKind::config, "verify: trials must be at least 1");

    CheckOutcome decomposition{"decomposition residuals < 1e-9"};
    CheckOutcome nulling{"nulling and orthogonality < 1e-10"};
    CheckOutcome oracle{"closed-form rate terms vs gaussian_mi < 1e-8"};
    CheckOutcome metric{"chordal metric symmetry/triangle/unitary invariance"};
    CheckOutcome perturb{"perturbation hits target distance within 1e-6"};
    CheckOutcome leakage{"leakage power <= leakage bound"};
    CheckOutcome variational{"log-det variational maximizer"};
    CheckOutcome sandwich{"log-det perturbation sandwich"};
    CheckOutcome beta{"beta(P) >= 0"};
    CheckOutcome eve_limit{"eavesdropper term converges to its limit (1e-3)"};

    for (int t = 0; t < trials; ++t)
    {
        Rng rng(trial_seed(seed, std::uint64_t(t)));
        const AntennaConfig cfg = verify_configs[std::size_t(t) % verify_configs.size()];
        const ChannelSet ch = sample_channels(cfg, rng);

        // decompositions
        {
            const SvdResult d = svd(ch.Hd);
            ComplexMatrix S = ComplexMatrix::Zero(ch.Hd.rows(), ch.Hd.cols());
            for (Index i = 0; i < d.singular_values.size(); ++i)
                S(i, i) = d.singular_values(i);
            record(decomposition, (d.U * S * d.V.adjoint() - ch.Hd).norm() / ch.Hd.norm(), 1e-9);
            const QrTallResult qr = qr_tall(ch.Hd.adjoint());
            record(decomposition, (qr.F * qr.C - ch.Hd.adjoint()).norm() / ch.Hd.norm(), 1e-9);
        }

        const ReceiverFilters filters = rx_postfilter(ch.Hd, ch.Hj, rng);
        const Precoders perfect = tx_precoders_perfect(ch.Hd);
        const GrassmannPoint F(filters.F);
        const FeedbackSchedule sched = FeedbackSchedule::scaled(0.0);
        const double P = 1e4;
        const std::int64_t nf = feedback_bits(P, sched, cfg.n_t, cfg.n_r);
        const GrassmannPoint Fhat = perturb_quantize(F, nf, rng);
        const Precoders quant = tx_precoders_quantized(Fhat);
        const PowerPolicy policy = PowerPolicy::with_defaults(P, cfg.n_r);

        record(nulling, (filters.V.adjoint() * ch.Hj).norm(), 1e-10);
        record(nulling, (ch.Hd * perfect.W2).norm(), 1e-10);
        record(nulling, (Fhat.basis().adjoint() * quant.W2).norm(), 1e-10);
        record(nulling, (perfect.W1.adjoint() * perfect.W2).norm(), 1e-10);
        record(nulling, (quant.W1.adjoint() * quant.W2).norm(), 1e-10);

        // oracle: the invertible G^* does not change mutual information, so
        // the receiver terms are compared with the unfiltered V^* y model.
        {
            const double s = policy.rho * policy.signal_power();
            const double a = policy.an_power(cfg.an_dim());
            const ComplexMatrix VHd = filters.V.adjoint() * ch.Hd;
            const ComplexMatrix Kp = s * ComplexMatrix::Identity(cfg.n_r, cfg.n_r);
            const ComplexMatrix none(0, 0);
            const RateTerms rp = secrecy_rate_perfect_G(ch, perfect, filters, policy);
            const RateTerms rq = secrecy_rate_quantized_G(ch, quant, filters, policy);

            const ComplexMatrix leakQ = a * VHd * quant.W2 * quant.W2.adjoint() * VHd.adjoint();
            const ComplexMatrix eveP = a * ch.He * perfect.W2 * perfect.W2.adjoint() * ch.He.adjoint();
            const ComplexMatrix eveQ = a * ch.He * quant.W2 * quant.W2.adjoint() * ch.He.adjoint();

            record(oracle, std::abs(rp.t_plus - gaussian_mi(VHd * perfect.W1, Kp, none, policy.sigma2)), 1e-8);
            record(oracle, std::abs(rq.t_plus - gaussian_mi(VHd * quant.W1, Kp, leakQ, policy.sigma2)), 1e-8);
            record(oracle, std::abs(rp.t_minus - gaussian_mi(ch.He * perfect.W1, Kp, eveP, policy.sigma2_eve)), 1e-8);
            record(oracle, std::abs(rq.t_minus - gaussian_mi(ch.He * quant.W1, Kp, eveQ, policy.sigma2_eve)), 1e-8);
        }

        // chordal metric
        {
            const GrassmannPoint A(random_truncated_unitary(cfg.n_t, cfg.n_r, rng));
            const GrassmannPoint B(random_truncated_unitary(cfg.n_t, cfg.n_r, rng));
            const GrassmannPoint C(random_truncated_unitary(cfg.n_t, cfg.n_r, rng));
            const double ab = chordal_distance(A, B), bc = chordal_distance(B, C), ac = chordal_distance(A, C);
            record(metric, std::abs(ab - chordal_distance(B, A)), 1e-12);
            record(metric, ac - (ab + bc), 1e-9);
            const GrassmannPoint AQ(A.basis() * random_unitary(cfg.n_r, rng));
            record(metric, chordal_distance(A, AQ), 1e-10);
        }

        // perturbation and leakage
        {
            const double target = quant_error_bound(nf, cfg.n_t, cfg.n_r);
            record(perturb, std::abs(chordal_distance(F, Fhat) - target), 1e-6);
            const double L = leakage_power(filters, ch.Hd, quant.W2, policy);
            const double bound = leakage_bound(policy, nf, cfg);
            record(leakage, L - bound * (1.0 + 1e-6), 0.0);
        }

        // log-det lemmas on 3x3 instances
        {
            const ComplexMatrix E = random_pd(3, rng);
            const ComplexMatrix Einv = E.inverse();
            const double best = logdet_variational_objective(hermitian_part(Einv), E);
            record(variational, std::abs(best + logdet_pd(E) * std::numbers::ln2), 1e-9);
            const double other = logdet_variational_objective(random_pd(3, rng), E);
            record(variational, other - best, 0.0);

            const ComplexMatrix A = random_pd(3, rng);
            // A + D = (1 - u) A + (PD) stays positive definite for u < 1.
            const double u = std::uniform_real_distribution<double>(0.0, 0.99)(rng);
            const ComplexMatrix D = random_pd(3, rng) - u * A;
            const LogdetPerturbation lp = logdet_perturbation_check(A, D);
            record(sandwich, lp.lower - lp.lhs, 1e-9);
            record(sandwich, lp.lhs - lp.upper, 1e-9);
        }

        record(beta, -beta_P(ch, filters, quant, policy), 1e-9);

        {
            const PowerPolicy huge = PowerPolicy::with_defaults(1e9, cfg.n_r);
            const double t_minus = secrecy_rate_perfect_G(ch, perfect, filters, huge).t_minus;
            record(eve_limit, std::abs(t_minus - eve_rate_limit(ch, perfect, huge, cfg)), 1e-3);
        }
    }

    VerifyReport report;
    report.checks = {decomposition, nulling, oracle, metric, perturb, leakage, variational, sandwich, beta, eve_limit};
    return report;
}

} // namespace simsec
