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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <set>
#include <sstream>

#include <omp.h>

namespace simsec {

const char *to_string(Scenario s)
{
    switch (s)
    {
    case Scenario::slope: return "slope";
    case Scenario::saturation: return "saturation";
    case Scenario::gap_vs_bits: return "gap_vs_bits";
    case Scenario::custom: return "custom";
    }
    return "unknown";
}

Scenario parse_scenario(const std::string &name)
{
    for (Scenario s : {Scenario::slope, Scenario::saturation, Scenario::gap_vs_bits, Scenario::custom})
        if (name == to_string(s))
            return s;
    throw Error(ErrorKind::config, "unknown scenario '" + name + "'");
}

std::vector<double> SnrGrid::points() const
{
    std::vector<double> out;
    if (!(step > 0.0))
        return out;
    for (int k = 0;; ++k)
    {
        const double v = lo + k * step;
        if (v > hi + 1e-9)
            break;
        out.push_back(v);
    }
    return out;
}

ExperimentConfig ExperimentConfig::defaults_for(Scenario scenario, const std::vector<int> &n_r_list)
{
    ExperimentConfig cfg;
    cfg.scenario = scenario;
    std::vector<int> receivers = n_r_list;
    switch (scenario)
    {
    case Scenario::slope:
    case Scenario::custom:
        if (receivers.empty())
            receivers = {2, 3, 4};
        cfg.schedule = FeedbackSchedule::scaled(0.0);
        break;
    case Scenario::saturation:
        if (receivers.empty())
            receivers = {3};
        cfg.schedule = FeedbackSchedule::fixed(30);
        break;
    case Scenario::gap_vs_bits:
        if (receivers.empty())
            receivers = {3};
        cfg.grid = {10.0, 30.0, 10.0};
        for (int nf = 10; nf <= 100; nf += 10)
            cfg.nf_sweep.push_back(nf);
        break;
    }
    for (int n_r : receivers)
        cfg.antennas.push_back({2 * n_r, n_r, 1, n_r});
    return cfg;
}

void ExperimentConfig::validate() const
{
    if (trials < 1)
        throw Error(ErrorKind::config, "trials must be at least 1");
    if (!(grid.step > 0.0))
        throw Error(ErrorKind::config, "snr step must be positive");
    if (!(grid.lo < grid.hi))
        throw Error(ErrorKind::config, "snr-min must be below snr-max");
    if (!(rho > 0.0 && rho < 1.0))
        throw Error(ErrorKind::config, "rho must lie in (0, 1)");
    if (threads < 0)
        throw Error(ErrorKind::config, "threads must be nonnegative");
    if (antennas.empty())
        throw Error(ErrorKind::config, "no antenna configuration given");
    schedule.validate();

    for (const auto &a : antennas)
    {
        a.validate();
        if (a.n_t < 2 * a.n_r)
            throw Error(ErrorKind::config, "quantizer surrogate requires n_t >= 2 n_r");
        if (scenario != Scenario::custom && (a.n_t != 2 * a.n_r || a.n_j != 1 || a.n_e != a.n_r))
            throw Error(ErrorKind::config, std::string(to_string(scenario)) +
                                               " scenario requires n_t = 2 n_r, n_j = 1, n_e = n_r");
    }
    if (scenario == Scenario::gap_vs_bits)
    {
        if (nf_sweep.empty())
            throw Error(ErrorKind::config, "gap_vs_bits needs a feedback-bit sweep");
        for (auto nf : nf_sweep)
            if (nf < 1)
                throw Error(ErrorKind::config, "feedback bits must be at least 1");
    }
}

std::vector<EvalPoint> evaluation_points(const ExperimentConfig &cfg, const AntennaConfig &antennas)
{
    std::vector<EvalPoint> out;
    for (double snr : cfg.grid.points())
    {
        if (cfg.scenario == Scenario::gap_vs_bits)
        {
            for (auto nf : cfg.nf_sweep)
                out.push_back({snr, nf});
            continue;
        }
        const double P = power_from_db(snr);
        // A scaled schedule is undefined at P <= 1; spend a single bit there.
        const bool scaled = cfg.schedule.mode == FeedbackSchedule::Mode::scaled;
        const std::int64_t nf =
            (scaled && !(P > 1.0)) ? 1 : feedback_bits(P, cfg.schedule, antennas.n_t, antennas.n_r);
        out.push_back({snr, nf});
    }
    return out;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial)
{
    // splitmix64 finalizer (a bijection) of an injective affine map of trial
    std::uint64_t z = seed + trial * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::vector<RateSample> run_trial(const ExperimentConfig &cfg, const AntennaConfig &antennas,
                                  std::uint64_t trial)
{
    Rng rng(trial_seed(cfg.seed, trial));
    const ChannelSet ch = sample_channels(antennas, rng);
    const ComplexMatrix B = random_truncated_unitary(antennas.n_t, antennas.d_s(), rng);
    const ReceiverFilters filters = rx_postfilter(ch.Hd, ch.Hj, B);
    const Precoders perfect = tx_precoders_perfect(ch.Hd);
    const GrassmannPoint F(filters.F);
    // Same perturbation direction at every point of the sweep.
    const std::uint64_t perturb_seed = rng();

    std::vector<RateSample> out;
    for (const EvalPoint &pt : evaluation_points(cfg, antennas))
    {
        const PowerPolicy policy = PowerPolicy::with_defaults(power_from_db(pt.snr_db), antennas.n_r, cfg.rho);
        Rng prng(perturb_seed);
        const Precoders quantized = tx_precoders_quantized(perturb_quantize(F, pt.nf_bits, prng));

        const RateTerms rp = secrecy_rate_perfect_G(ch, perfect, filters, policy);
        const RateTerms rq = secrecy_rate_quantized_G(ch, quantized, filters, policy);

        RateSample s;
        s.P = policy.P;
        s.snr_db = pt.snr_db;
        s.r_perfect = rp.clipped();
        s.r_quantized = rq.clipped();
        s.r_perfect_raw = rp.raw();
        s.r_quantized_raw = rq.raw();
        s.gap = s.r_perfect_raw - s.r_quantized_raw;
        s.leakage = leakage_power(filters, ch.Hd, quantized.W2, policy);
        s.nf_bits = pt.nf_bits;
        out.push_back(s);
    }
    return out;
}

namespace {

// Means over trials, accumulated in trial-index order.
std::vector<ResultRow> aggregate(const ExperimentConfig &cfg, const AntennaConfig &antennas,
                                 const std::vector<std::vector<RateSample>> &per_trial)
{
    const std::vector<EvalPoint> points = evaluation_points(cfg, antennas);
    std::vector<ResultRow> rows(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        rows[i].scenario = cfg.scenario;
        rows[i].antennas = antennas;
        rows[i].snr_db = points[i].snr_db;
        rows[i].nf_bits = points[i].nf_bits;
        rows[i].trials = cfg.trials;
    }
    for (const auto &samples : per_trial)
        for (std::size_t i = 0; i < rows.size(); ++i)
        {
            rows[i].r_perfect_mean += samples[i].r_perfect;
            rows[i].r_quantized_mean += samples[i].r_quantized;
            rows[i].gap_mean += samples[i].gap;
            rows[i].leakage_mean += samples[i].leakage;
        }
    const double n = double(cfg.trials);
    for (auto &r : rows)
    {
        r.r_perfect_mean /= n;
        r.r_quantized_mean /= n;
        r.gap_mean /= n;
        r.leakage_mean /= n;
    }
    return rows;
}

ExperimentResult finish(std::vector<ResultRow> rows)
{
    ExperimentResult result;
    result.rows = std::move(rows);
    result.slopes = fit_slopes(result.rows);
    return result;
}

} // namespace

ExperimentResult run_experiment_serial(const ExperimentConfig &cfg)
{
    cfg.validate();
    std::vector<ResultRow> rows;
    for (const auto &antennas : cfg.antennas)
    {
        std::vector<std::vector<RateSample>> per_trial(cfg.trials);
        for (int t = 0; t < cfg.trials; ++t)
            per_trial[t] = run_trial(cfg, antennas, std::uint64_t(t));
        auto part = aggregate(cfg, antennas, per_trial);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return finish(std::move(rows));
}

ExperimentResult run_experiment(const ExperimentConfig &cfg)
{
    cfg.validate();
    const int threads = resolve_thread_count(cfg.threads);
    std::vector<ResultRow> rows;
    for (const auto &antennas : cfg.antennas)
    {
        std::vector<std::vector<RateSample>> per_trial(cfg.trials);
        std::vector<std::exception_ptr> failures(cfg.trials);

#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (int t = 0; t < cfg.trials; ++t)
        {
            try
            {
                per_trial[t] = run_trial(cfg, antennas, std::uint64_t(t));
            }
            catch (...)
            {
                failures[t] = std::current_exception();
            }
        }
        // Report the lowest failing trial, independent of scheduling.
        for (const auto &f : failures)
            if (f)
                std::rethrow_exception(f);

        auto part = aggregate(cfg, antennas, per_trial);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return finish(std::move(rows));
}

int resolve_thread_count(int requested)
{
    if (requested > 0)
        return requested;
    if (const char *env = std::getenv("SIMSEC_THREADS"))
    {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0)
            return int(v);
    }
    return std::max(1, omp_get_max_threads());
}

std::vector<CurveSlope> fit_slopes(const std::vector<ResultRow> &rows, std::optional<SdofWindow> window)
{
    auto key_of = [](const AntennaConfig &a) { return std::tuple(a.n_r, a.n_t, a.n_j, a.n_e); };
    std::map<std::tuple<int, int, int, int>, std::vector<const ResultRow *>> groups;
    for (const auto &r : rows)
        groups[key_of(r.antennas)].push_back(&r);

    std::vector<CurveSlope> out;
    auto fit_curve = [&](std::vector<const ResultRow *> curve, std::optional<std::int64_t> nf) {
        std::sort(curve.begin(), curve.end(), [](auto *a, auto *b) { return a->snr_db < b->snr_db; });
        std::vector<double> snr, perfect, quantized;
        for (const auto *r : curve)
        {
            snr.push_back(r->snr_db);
            perfect.push_back(r->r_perfect_mean);
            quantized.push_back(r->r_quantized_mean);
        }
        if (snr.empty())
            return;
        const SdofWindow w = window.value_or(SdofWindow{snr.back() - 20.0, snr.back()});
        try
        {
            CurveSlope cs;
            cs.antennas = curve.front()->antennas;
            cs.nf_bits = nf;
            cs.perfect = sdof_fit(snr, perfect, w);
            cs.quantized = sdof_fit(snr, quantized, w);
            out.push_back(cs);
        }
        catch (const Error &)
        {
            // fewer than three points in the window: not a fittable curve
        }
    };

    for (auto &[key, members] : groups)
    {
        std::set<double> distinct;
        for (const auto *r : members)
            distinct.insert(r->snr_db);
        if (distinct.size() == members.size())
        {
            fit_curve(members, std::nullopt);
            continue;
        }
        std::map<std::int64_t, std::vector<const ResultRow *>> by_nf;
        for (const auto *r : members)
            by_nf[r->nf_bits].push_back(r);
        for (auto &[nf, curve] : by_nf)
            fit_curve(curve, nf);
    }
    return out;
}

} // namespace simsec
