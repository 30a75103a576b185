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

#include "levysup/specfun.hpp"

using namespace levysup;

static void BM_Zeta(benchmark::State& state) {
    double s = -1.7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(zeta(s));
        s = s > 5 ? -1.7 : s + 0.37;
    }
}
BENCHMARK(BM_Zeta);

static void BM_ExpectedPositivePart(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(expected_positive_part(1.5, 0.6, 1.0));
}
BENCHMARK(BM_ExpectedPositivePart);
