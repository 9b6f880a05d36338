/*
 * Copyright 2026 The spe-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include "spelab/eq_check.hpp"
#include "spelab/fixpoint.hpp"
#include "spelab/generator.hpp"
#include "spelab/oracle.hpp"
#include "spelab/parallel.hpp"
#include "spelab/synthesis.hpp"

namespace {

spelab::Game make_game(spelab::CostKind kind, std::size_t vertices, std::size_t players)
{
    spelab::GenParams p;
    p.kind = kind;
    p.vertices = vertices;
    p.players = players;
    p.max_degree = 3;
    p.max_weight = 3;
    return spelab::random_game(vertices * 131 + players, p);
}

void BM_ReachFixpoint(benchmark::State& state)
{
    const auto g = make_game(spelab::CostKind::Reachability, state.range(0), state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(spelab::solve(g));
}
BENCHMARK(BM_ReachFixpoint)->ArgsProduct({{4, 8, 12, 16}, {2, 3}});

void BM_LimInfFixpoint(benchmark::State& state)
{
    const auto g = make_game(spelab::CostKind::LimInf, state.range(0), state.range(1));
    for (auto _ : state) benchmark::DoNotOptimize(spelab::solve(g));
}
BENCHMARK(BM_LimInfFixpoint)->ArgsProduct({{4, 8, 12, 16}, {2, 3}});

void BM_LimSupFixpointThreads(benchmark::State& state)
{
    const auto g = make_game(spelab::CostKind::LimSup, 16, 3);
    spelab::set_thread_count(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(spelab::solve(g));
    spelab::set_thread_count(1);
}
BENCHMARK(BM_LimSupFixpointThreads)->Arg(1)->Arg(2)->Arg(4);

void BM_SynthesizeAndCheck(benchmark::State& state)
{
    const auto g = make_game(spelab::CostKind::Reachability, state.range(0), 3);
    const auto report = spelab::solve(g);
    for (auto _ : state) {
        auto s = spelab::synthesize(g, report);
        benchmark::DoNotOptimize(spelab::check_very_weak_spe(g, s.profile));
    }
}
BENCHMARK(BM_SynthesizeAndCheck)->Arg(4)->Arg(8)->Arg(12);

void BM_Oracle(benchmark::State& state)
{
    const auto g = make_game(spelab::CostKind::LimInf, 5, 2);
    const auto bound = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        const auto u = spelab::build_universe(g, bound, bound);
        benchmark::DoNotOptimize(spelab::oracle_fixpoint(g, u, spelab::Mode::PrefixInd));
    }
}
BENCHMARK(BM_Oracle)->Arg(4)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
