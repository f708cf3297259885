// SPDX-License-Identifier: Apache-2.0
//
// nfmimo - line-of-sight MIMO array placement toolkit
// Copyright (C) 2026 The nfmimo Authors
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

#include "nfmimo/channel.hpp"
#include "nfmimo/grid_search.hpp"
#include "nfmimo/nonparaxial.hpp"
#include "nfmimo/paraxial.hpp"
#include "nfmimo/spectral.hpp"

#include <benchmark/benchmark.h>

using namespace nfmimo;

namespace
{
    const Waveband band = Waveband::from_ghz(28.0);
    double lam(double m) { return band.from_lambda(m); }

    const ArrayGeometry tx = ArrayGeometry::linear(16, lam(0.5));
    const ArrayGeometry rx = ArrayGeometry::linear(48, lam(10.6667), Vec3(0, lam(256), 0));
}

static void BM_ExactChannel(benchmark::State &state)
{
    const auto t = expand_uniform(tx), r = expand_uniform(rx);
    for (auto _ : state)
        benchmark::DoNotOptimize(exact_channel(t, r, band));
}
BENCHMARK(BM_ExactChannel);

static void BM_QuarticChannel(benchmark::State &state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(quartic_channel(tx, rx, band));
}
BENCHMARK(BM_QuarticChannel);

static void BM_EffectiveRank(benchmark::State &state)
{
    const auto h = exact_channel(expand_uniform(tx), expand_uniform(rx), band);
    for (auto _ : state)
        benchmark::DoNotOptimize(effective_rank(hermitian_eigenvalues(gram(h))));
}
BENCHMARK(BM_EffectiveRank);

static void BM_ParaxialSpacings(benchmark::State &state)
{
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_spacings(tx, rx, band));
}
BENCHMARK(BM_ParaxialSpacings);

static void BM_FourSubArrays(benchmark::State &state)
{
    const auto t = ArrayGeometry::linear(16, lam(1.0));
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_four_subarrays(t, 12, 12, lam(256), band));
}
BENCHMARK(BM_FourSubArrays);

static void BM_ChainSixSubArrays(benchmark::State &state)
{
    const auto t = ArrayGeometry::linear(16, lam(1.0));
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_chain(t, {8, 8, 8, 8, 8, 8}, lam(256), band));
}
BENCHMARK(BM_ChainSixSubArrays);

static void BM_PartitionGrid(benchmark::State &state)
{
    const auto p = solve_four_subarrays(tx, 12, 12, lam(256), band).partition();
    GridSpec spec;
    const double step = 80.0 / static_cast<double>(state.range(0));
    spec.axes = {GridAxis{0.5, 80.0, step}, GridAxis{0.5, 80.0, step}};
    for (auto _ : state)
        benchmark::DoNotOptimize(grid_search(tx, p, band, spec));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * spec.total_points()));
}
BENCHMARK(BM_PartitionGrid)->Arg(40)->Arg(160)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
