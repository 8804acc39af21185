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


#include "bubblekit/characterization.hpp"
#include "bubblekit/models.hpp"
#include "bubblekit/series_core.hpp"

#include <benchmark/benchmark.h>

namespace {

void BM_DecomposeConstant(benchmark::State& state)
{
    const auto path = bubblekit::gen_constant(100.0, 5.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(bubblekit::decompose(path));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DecomposeConstant)->RangeMultiplier(10)->Range(1000, 1000000)->Unit(benchmark::kMillisecond);

void BM_ImpliedDeflators(benchmark::State& state)
{
    const auto path = bubblekit::gen_gordon(1.0, 1.0, 1.05, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(bubblekit::implied_deflators(path));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_ImpliedDeflators)->Arg(100000);

void BM_SuggestTail(benchmark::State& state)
{
    const auto path = bubblekit::gen_convergent_yield(1.0, 0.9, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(bubblekit::suggest_tail(path));
    }
}
BENCHMARK(BM_SuggestTail)->Arg(1000)->Arg(100000);

}  // namespace
