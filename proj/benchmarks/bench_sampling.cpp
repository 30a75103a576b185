/*
    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

        https://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.
*/
#include <benchmark/benchmark.h>

#include "levysup/model.hpp"
#include "levysup/rng.hpp"
#include "levysup/sampling.hpp"

using namespace levysup;

static void BM_Philox(benchmark::State& state) {
    CounterRng rng(1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(rng.next_u64());
}
BENCHMARK(BM_Philox);

static void BM_Normal(benchmark::State& state) {
    CounterRng rng(1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(rng.normal());
}
BENCHMARK(BM_Normal);

// Chambers-Mallows-Stuck, arg = 100 * alpha
static void BM_Stable(benchmark::State& state) {
    const double a = static_cast<double>(state.range(0)) / 100.0;
    CounterRng rng(1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(sample_stable(a, 0.3, 1.0, rng));
}
BENCHMARK(BM_Stable)->Arg(80)->Arg(120)->Arg(150)->Arg(190);

static void run_sampler(benchmark::State& state, const LevyModel& m, double dt) {
    const IncrementSampler s(m, dt);
    CounterRng rng(1, 0);
    for (auto _ : state) benchmark::DoNotOptimize(s.draw(rng));
}

static void BM_IncrementNig(benchmark::State& state) {
    run_sampler(state, normal_inverse_gaussian(2.0, 0.5, 1.0), 1.0 / 4096);
}
BENCHMARK(BM_IncrementNig);

static void BM_IncrementVarianceGamma(benchmark::State& state) {
    run_sampler(state, variance_gamma(1.0, 2.0, 1.0), 1.0 / 4096);
}
BENCHMARK(BM_IncrementVarianceGamma);

static void BM_IncrementTemperedStable(benchmark::State& state) {
    TemperedStable p;
    p.c_plus = 1;
    p.c_minus = 1;
    p.alpha_plus = 1.5;
    p.alpha_minus = 1.2;
    p.lambda_plus = 1;
    p.lambda_minus = 2;
    run_sampler(state, tempered_stable(p), 1.0 / 4096);
}
BENCHMARK(BM_IncrementTemperedStable);
