// Copyright 2026 The bubblekit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "bubblekit/continuous_time.hpp"
#include "bubblekit/models.hpp"

#include <benchmark/benchmark.h>

namespace {

bubblekit::MiaoWangScenario scenario(double grid_step)
{
    bubblekit::MiaoWangScenario s;
    s.marginal_q = 1.0;
    s.capital = 2.0;
    s.interpreted_component = 0.5;
    s.dividend = 0.2;
    s.grid_step = grid_step;
    return s;
}

void BM_GenerateMiaoWang(benchmark::State& state)
{
    const auto s = scenario(1.0 / static_cast<double>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(bubblekit::gen_miao_wang(s));
    }
}
BENCHMARK(BM_GenerateMiaoWang)->Arg(1000)->Arg(10000);

void BM_IntegrateDFOverP(benchmark::State& state)
{
    const auto path = bubblekit::gen_miao_wang(scenario(1.0 / static_cast<double>(state.range(0))));
    for (auto _ : state) {
        benchmark::DoNotOptimize(bubblekit::integrate_dF_over_P(path, path.horizon()));
    }
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(path.intervals()));
}
BENCHMARK(BM_IntegrateDFOverP)->Arg(1000)->Arg(10000);

void BM_DecomposeContinuous(benchmark::State& state)
{
    const auto path = bubblekit::gen_miao_wang(scenario(1e-3));
    for (auto _ : state) {
        benchmark::DoNotOptimize(bubblekit::decompose_continuous(path));
    }
}
BENCHMARK(BM_DecomposeContinuous);

}  // namespace
