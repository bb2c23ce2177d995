// SPDX-License-Identifier: Apache-2.0
//
// ristrainlab: simulation library for RIS-assisted multiuser downlink training
// Copyright (C) 2026 The ristrainlab authors
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

#include "ristrain/beamforming.hpp"
#include "ristrain/estimators.hpp"
#include "ristrain/experiments.hpp"
#include "ristrain/theory.hpp"
#include "ristrain/training.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

using namespace ristrain;

void BM_SolvePowerMin(benchmark::State& state)
{
    const auto k = static_cast<std::size_t>(state.range(0));
    RngStream rng(1, 1);
    const ComplexMatrix h = sample_cgauss(rng, 8, k, 1.0);
    const std::vector<double> gamma(k, 10.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_power_min(h, gamma, 1.0));
}
BENCHMARK(BM_SolvePowerMin)->Arg(1)->Arg(2)->Arg(4)->Arg(6);

void BM_Training(benchmark::State& state)
{
    ExperimentSpec spec = at_sweep_value(preset("fig12"), static_cast<double>(state.range(0)));
    const ScenarioConfig& sc = spec.scenario;
    RngStream rng(2, 2);
    const ChannelRealization ch = sample_channels(sc, rng);
    const TrainingSchedule s = schedule_random(sc.ris_elements(), sc.ris_elements() + 1, rng);
    const PilotConfig pilots = orthogonal_pilots(1, sc.pilot_power_mw);
    for (auto _ : state)
        benchmark::DoNotOptimize(
            run_training(ch, s, pilots, sc.noise_bs_mw, sc.sinr_targets, sc.noise_user_mw, spec.solve, rng));
}
BENCHMARK(BM_Training)->Arg(10)->Arg(30)->Arg(60)->Unit(benchmark::kMicrosecond);

void BM_AlternatingOptimization(benchmark::State& state)
{
    ExperimentSpec spec = at_sweep_value(preset("fig12"), static_cast<double>(state.range(0)));
    const ScenarioConfig& sc = spec.scenario;
    RngStream rng(3, 3);
    const ChannelRealization ch = sample_channels(sc, rng);
    const CascadedEstimate est = inject_errors(ch, ErrorStats{}, rng);
    for (auto _ : state)
        benchmark::DoNotOptimize(optimize_rc_ao(est, sc.sinr_targets, sc.noise_user_mw, spec.solve, rng));
}
BENCHMARK(BM_AlternatingOptimization)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_GofQ(benchmark::State& state)
{
    const auto q = static_cast<std::size_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(theory::g_of_Q(q));
}
BENCHMARK(BM_GofQ)->Arg(8)->Arg(64)->Arg(4096);

} // namespace
BENCHMARK_MAIN();
