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

// Serial reference vs OpenMP trial loop on a reduced slope experiment.

#include <benchmark/benchmark.h>

#include "simsec/harness.hpp"

namespace {

simsec::ExperimentConfig bench_config(int trials)
{
    auto cfg = simsec::ExperimentConfig::defaults_for(simsec::Scenario::slope, {2, 3});
    cfg.trials = trials;
    cfg.seed = 11;
    return cfg;
}

void BM_experiment_serial(benchmark::State &state)
{
    const auto cfg = bench_config(int(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(simsec::run_experiment_serial(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_experiment_openmp(benchmark::State &state)
{
    auto cfg = bench_config(int(state.range(0)));
    cfg.threads = int(state.range(1));
    for (auto _ : state)
        benchmark::DoNotOptimize(simsec::run_experiment(cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_single_trial(benchmark::State &state)
{
    const auto cfg = bench_config(1);
    const simsec::AntennaConfig antennas{8, 4, 1, 4};
    std::uint64_t t = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(simsec::run_trial(cfg, antennas, t++));
}

} // namespace

BENCHMARK(BM_experiment_serial)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_experiment_openmp)->Args({32, 1})->Args({32, 2})->Args({32, 4})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_single_trial)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
