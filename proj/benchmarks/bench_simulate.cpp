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
#include "levysup/simulate.hpp"

using namespace levysup;

namespace {

void run_coupled(benchmark::State& state, const LevyModel& m) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const CoupledSimulator sim(m, {n / 4, n / 2, n}, 16);
    CoupledDraw d;
    std::uint64_t r = 0;
    for (auto _ : state) {
        CounterRng rng(7, r++);
        sim.draw(rng, d);
        benchmark::DoNotOptimize(d.m_fine);
    }
    // event-driven engines have no fine grid; count coarse steps there
    const std::size_t steps = sim.fine_steps() > 0 ? sim.fine_steps() : n;
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * steps));
}

}  // namespace

static void BM_CoupledBrownian(benchmark::State& state) { run_coupled(state, brownian(0.0, 1.0)); }
BENCHMARK(BM_CoupledBrownian)->Arg(64)->Arg(1024);

static void BM_CoupledStable(benchmark::State& state) { run_coupled(state, stable(1.5, 0.0)); }
BENCHMARK(BM_CoupledStable)->Arg(64)->Arg(1024);

static void BM_CoupledCompoundPoisson(benchmark::State& state) {
    run_coupled(state, compound_poisson(0.5, 2.0, JumpDistribution(Atoms{{1.0, -1.0}, {0.5, 0.5}})));
}
BENCHMARK(BM_CoupledCompoundPoisson)->Arg(1024);
