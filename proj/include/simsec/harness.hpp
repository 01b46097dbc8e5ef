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
#include <optional>
#include <string>
#include <vector>

#include "simsec/grassmann.hpp"
#include "simsec/rates.hpp"
#include "simsec/transceiver.hpp"

namespace simsec {

enum class Scenario { slope, saturation, gap_vs_bits, custom };

const char *to_string(Scenario s);
Scenario parse_scenario(const std::string &name); // throws config error

struct SnrGrid
{
    double lo = 0.0;
    double hi = 60.0;
    double step = 5.0;

    std::vector<double> points() const;
};

struct ExperimentConfig
{
    Scenario scenario = Scenario::slope;
    std::vector<AntennaConfig> antennas;
    SnrGrid grid;
    std::vector<std::int64_t> nf_sweep; // gap_vs_bits only
    int trials = 500;
    std::uint64_t seed = 1;
    FeedbackSchedule schedule = FeedbackSchedule::scaled(0.0);
    double rho = 0.5;
    std::string output;
    int threads = 0; // 0: SIMSEC_THREADS or OpenMP default

    // Reference settings of the named experiment for receivers
    // with the given antenna counts: n_t = 2 n_r, n_j = 1, n_e = n_r.
    static ExperimentConfig defaults_for(Scenario scenario, const std::vector<int> &n_r_list = {});

    // Throws config error; checked before any computation.
    void validate() const;
};

// One evaluation point of a trial: transmit power and feedback size.
struct EvalPoint
{
    double snr_db;
    std::int64_t nf_bits;
};

struct ResultRow
{
    Scenario scenario = Scenario::slope;
    AntennaConfig antennas;
    double snr_db = 0.0;
    std::int64_t nf_bits = 0;
    double r_perfect_mean = 0.0;
    double r_quantized_mean = 0.0;
    double gap_mean = 0.0;
    double leakage_mean = 0.0;
    int trials = 0;
};

struct CurveSlope
{
    AntennaConfig antennas;
    std::optional<std::int64_t> nf_bits; // set when the curve is one N_f of a sweep
    SdofEstimate perfect;
    SdofEstimate quantized;
};

struct ExperimentResult
{
    std::vector<ResultRow> rows;
    std::vector<CurveSlope> slopes;
};

// Evaluation points of one antenna configuration, in evaluation order.
std::vector<EvalPoint> evaluation_points(const ExperimentConfig &cfg, const AntennaConfig &antennas);

// Per-trial seed: a bijective mix of seed + trial * golden ratio, so distinct
// trials never share a stream.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial);

// One Monte Carlo trial for one antenna configuration. Pure function of
// (cfg, antennas, trial).
std::vector<RateSample> run_trial(const ExperimentConfig &cfg, const AntennaConfig &antennas,
                                  std::uint64_t trial);

// OpenMP over trials; per-trial samples are reduced in trial order so the
// result does not depend on the thread count.
ExperimentResult run_experiment(const ExperimentConfig &cfg);

// Single-threaded reference of run_experiment.
ExperimentResult run_experiment_serial(const ExperimentConfig &cfg);

// Threads actually used: cfg.threads, else SIMSEC_THREADS, else the OpenMP default.
int resolve_thread_count(int requested);

// Slopes of every curve in a set of rows. Rows are grouped by antenna tuple;
// groups holding several rows per SNR are further split by N_f. When no
// window is given the top 20 dB of each curve is used.
std::vector<CurveSlope> fit_slopes(const std::vector<ResultRow> &rows,
                                   std::optional<SdofWindow> window = std::nullopt);

// ----- CSV -----------------------------------------------------------------

inline constexpr const char *csv_header =
    "scenario,n_t,n_r,n_j,n_e,snr_db,nf_bits,r_perfect_mean,r_quantized_mean,gap_mean,leakage_mean,trials";

// Rows sorted by (n_r, snr_db), floats with 9 significant digits.
std::string format_csv(const ExperimentResult &result);
void write_csv(const ExperimentResult &result, const std::string &path);
std::vector<ResultRow> parse_csv(const std::string &text);
std::vector<ResultRow> read_csv(const std::string &path);

// ----- invariant / lemma suite ---------------------------------------------

struct CheckOutcome
{
    std::string name;
    int passed = 0;
    int failed = 0;
    double worst = 0.0; // largest residual or smallest slack seen
    bool ok() const noexcept { return failed == 0; }
};

struct VerifyReport
{
    std::vector<CheckOutcome> checks;
    bool ok() const noexcept;
};

VerifyReport run_verification(int trials, std::uint64_t seed);

// ----- command line --------------------------------------------------------

// Subcommands run, verify and slopes. Exit 0 on success, 1 on config error,
// 2 on numeric failure.
int cli_main(int argc, const char *const *argv);

} // namespace simsec
