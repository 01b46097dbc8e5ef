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

#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

namespace simsec {

namespace {

using json = nlohmann::json;

struct RunOptions
{
    std::string config_file;
    std::string scenario;
    std::vector<int> nr;
    double snr_min = 0.0, snr_max = 0.0, snr_step = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    double rho = 0.0;
    double epsilon = 0.0;
    std::vector<std::int64_t> nf;
    std::string out;
    int threads = 0;
};

json load_json(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::io, "cannot open config file '" + path + "'");
    try
    {
        return json::parse(in);
    }
    catch (const json::exception &e)
    {
        throw Error(ErrorKind::config, "config file '" + path + "': " + e.what());
    }
}

template <class T>
T json_get(const json &j, const char *key)
{
    try
    {
        return j.at(key).get<T>();
    }
    catch (const json::exception &e)
    {
        throw Error(ErrorKind::config, std::string("config key '") + key + "': " + e.what());
    }
}

// Config file first, explicit flags on top.
ExperimentConfig build_config(const RunOptions &o, const CLI::App &run)
{
    json file = json::object();
    if (!o.config_file.empty())
        file = load_json(o.config_file);
    auto given = [&](const char *flag) { return run.count(flag) > 0; };

    std::string scenario_name = "slope";
    if (file.contains("scenario"))
        scenario_name = json_get<std::string>(file, "scenario");
    if (given("--scenario"))
        scenario_name = o.scenario;

    std::vector<int> nr;
    if (file.contains("nr"))
        nr = json_get<std::vector<int>>(file, "nr");
    if (given("--nr"))
        nr = o.nr;

    ExperimentConfig cfg = ExperimentConfig::defaults_for(parse_scenario(scenario_name), nr);

    if (file.contains("antennas"))
    {
        cfg.antennas.clear();
        for (const auto &t : json_get<std::vector<std::vector<int>>>(file, "antennas"))
        {
            if (t.size() != 4)
                throw Error(ErrorKind::config, "config key 'antennas': expected [n_t, n_r, n_j, n_e] tuples");
            cfg.antennas.push_back({t[0], t[1], t[2], t[3]});
        }
    }

    auto pick = [&](auto &field, const char *key, const char *flag, const auto &flag_value) {
        using T = std::decay_t<decltype(field)>;
        if (file.contains(key))
            field = json_get<T>(file, key);
        if (given(flag))
            field = flag_value;
    };
    pick(cfg.grid.lo, "snr-min", "--snr-min", o.snr_min);
    pick(cfg.grid.hi, "snr-max", "--snr-max", o.snr_max);
    pick(cfg.grid.step, "snr-step", "--snr-step", o.snr_step);
    pick(cfg.trials, "trials", "--trials", o.trials);
    pick(cfg.seed, "seed", "--seed", o.seed);
    pick(cfg.rho, "rho", "--rho", o.rho);
    pick(cfg.output, "out", "--out", o.out);
    pick(cfg.threads, "threads", "--threads", o.threads);

    std::optional<double> epsilon;
    std::vector<std::int64_t> nf;
    if (file.contains("epsilon"))
        epsilon = json_get<double>(file, "epsilon");
    if (file.contains("nf"))
    {
        const json &v = file.at("nf");
        nf = v.is_array() ? json_get<std::vector<std::int64_t>>(file, "nf")
                          : std::vector<std::int64_t>{json_get<std::int64_t>(file, "nf")};
    }
    if (given("--epsilon"))
    {
        epsilon = o.epsilon;
        if (!given("--nf"))
            nf.clear();
    }
    if (given("--nf"))
    {
        nf = o.nf;
        if (!given("--epsilon"))
            epsilon.reset();
    }
    if (epsilon && !nf.empty())
        throw Error(ErrorKind::config, "--epsilon (scaled feedback) and --nf (fixed feedback) are exclusive");

    if (cfg.scenario == Scenario::gap_vs_bits)
    {
        if (epsilon)
            throw Error(ErrorKind::config, "gap_vs_bits sweeps fixed feedback sizes; --epsilon does not apply");
        if (!nf.empty())
            cfg.nf_sweep = nf;
    }
    else if (!nf.empty())
    {
        if (nf.size() != 1)
            throw Error(ErrorKind::config, "--nf takes a single value outside gap_vs_bits");
        cfg.schedule = FeedbackSchedule::fixed(nf.front());
    }
    else if (epsilon)
    {
        cfg.schedule = FeedbackSchedule::scaled(*epsilon);
    }
    return cfg;
}

void print_slopes(std::ostream &os, const std::vector<CurveSlope> &slopes, const char *scenario)
{
    for (const auto &s : slopes)
    {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "%s n_t=%d n_r=%d n_j=%d n_e=%d%s perfect=%.3f quantized=%.3f window=[%g,%g] dB\n",
                      scenario, s.antennas.n_t, s.antennas.n_r, s.antennas.n_j, s.antennas.n_e,
                      s.nf_bits ? (" nf=" + std::to_string(*s.nf_bits)).c_str() : "", s.perfect.slope,
                      s.quantized.slope, s.perfect.window.snr_lo, s.perfect.window.snr_hi);
        os << buf;
    }
}

int run_command(const RunOptions &o, const CLI::App &run)
{
    const ExperimentConfig cfg = build_config(o, run);
    const ExperimentResult result = run_experiment(cfg);
    if (cfg.output.empty())
    {
        std::cout << format_csv(result);
        print_slopes(std::cerr, result.slopes, to_string(cfg.scenario));
    }
    else
    {
        write_csv(result, cfg.output);
        std::cout << "wrote " << result.rows.size() << " rows to " << cfg.output << "\n";
        print_slopes(std::cout, result.slopes, to_string(cfg.scenario));
    }
    return 0;
}

int verify_command(int trials, std::uint64_t seed)
{
    const VerifyReport report = run_verification(trials, seed);
    int passed = 0, failed = 0;
    for (const auto &c : report.checks)
    {
        std::printf("[%s] %-52s passed=%d failed=%d worst=%.3g\n", c.ok() ? "PASS" : "FAIL", c.name.c_str(),
                    c.passed, c.failed, c.worst);
        passed += c.passed;
        failed += c.failed;
    }
    std::printf("total: %d passed, %d failed\n", passed, failed);
    return report.ok() ? 0 : 2;
}

int slopes_command(const std::string &path, std::optional<SdofWindow> window)
{
    const std::vector<ResultRow> rows = read_csv(path);
    const auto slopes = fit_slopes(rows, window);
    if (slopes.empty())
        throw Error(ErrorKind::config, "no curve in '" + path + "' has three points in the fit window");
    const char *scenario = rows.empty() ? "" : to_string(rows.front().scenario);
    print_slopes(std::cout, slopes, scenario);
    return 0;
}

} // namespace

int cli_main(int argc, const char *const *argv)
{
    CLI::App app{"Monte Carlo secrecy-rate experiments for artificial-noise MIMO with quantized feedback", "simsec"};
    app.require_subcommand(1);

    RunOptions ro;
    CLI::App *run = app.add_subcommand("run", "run a Monte Carlo experiment and write CSV");
    run->add_option("--config", ro.config_file, "JSON file with keys named like the flags");
    run->add_option("--scenario", ro.scenario, "slope | saturation | gap_vs_bits | custom");
    run->add_option("--nr", ro.nr, "receiver antennas (repeatable); n_t = 2 n_r, n_j = 1, n_e = n_r");
    run->add_option("--snr-min", ro.snr_min, "lowest SNR in dB");
    run->add_option("--snr-max", ro.snr_max, "highest SNR in dB");
    run->add_option("--snr-step", ro.snr_step, "SNR step in dB");
    run->add_option("--trials", ro.trials, "channel draws per point");
    run->add_option("--seed", ro.seed, "64-bit seed");
    run->add_option("--rho", ro.rho, "information power fraction");
    run->add_option("--epsilon", ro.epsilon, "feedback bits (1 + eps) n_r (n_t - n_r) log2 P");
    run->add_option("--nf", ro.nf, "fixed feedback bits (repeatable for gap_vs_bits)");
    run->add_option("--out", ro.out, "output CSV path (stdout when absent)");
    run->add_option("--threads", ro.threads, "worker threads (0: SIMSEC_THREADS or all cores)");

    int verify_trials = 100;
    std::uint64_t verify_seed = 1;
    CLI::App *verify = app.add_subcommand("verify", "run the invariant and lemma suite");
    verify->add_option("--trials", verify_trials, "random instances");
    verify->add_option("--seed", verify_seed, "64-bit seed");

    std::string csv_path;
    double fit_lo = 0.0, fit_hi = 0.0;
    CLI::App *slopes = app.add_subcommand("slopes", "fit SDoF slopes to each curve of a result CSV");
    slopes->add_option("csv", csv_path, "result CSV")->required();
    auto *lo_opt = slopes->add_option("--snr-lo", fit_lo, "fit window start in dB");
    auto *hi_opt = slopes->add_option("--snr-hi", fit_hi, "fit window end in dB");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try
    {
        if (*run)
            return run_command(ro, *run);
        if (*verify)
            return verify_command(verify_trials, verify_seed);
        if (*slopes)
        {
            std::optional<SdofWindow> window;
            if (*lo_opt || *hi_opt)
            {
                if (!(*lo_opt && *hi_opt))
                    throw Error(ErrorKind::config, "--snr-lo and --snr-hi must be given together");
                window = SdofWindow{fit_lo, fit_hi};
            }
            return slopes_command(csv_path, window);
        }
    }
    catch (const Error &e)
    {
        std::cerr << "simsec: " << to_string(e.kind()) << ": " << e.what() << "\n";
        return e.is_numeric() ? 2 : 1;
    }
    catch (const std::exception &e)
    {
        std::cerr << "simsec: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

} // namespace simsec
