#include <benchmark/benchmark.h>

#include "gaptile/construct.hpp"
#include "gaptile/grid.hpp"
#include "gaptile/oracle.hpp"
#include "gaptile/verify.hpp"

using namespace gaptile;

namespace {

void BM_VerifyInterval(benchmark::State& state) {
    const auto base = construct::lemma1_base(1, 16, 2, 1);
    const auto s = construct::lemma1_step(base, 4225, 1);
    const GapSet g({{1, 2}, {16, 1}, {4225, 1}});
    for (auto _ : state) benchmark::DoNotOptimize(verify_interval_tiling(s.tiling, g).ok());
    state.SetItemsProcessed(state.iterations() * s.tiling.length);
}
BENCHMARK(BM_VerifyInterval);

void BM_MinInterval(benchmark::State& state) {
    const GapSet g({{1, 1}, {static_cast<Int>(state.range(0)), 1}});
    for (auto _ : state) benchmark::DoNotOptimize(oracle::min_interval(g, 120).length);
}
BENCHMARK(BM_MinInterval)->DenseRange(2, 5);

void BM_SolveRectangle(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(oracle::solve_rectangle(StepType::unit(2, 3), 4, 6).status);
    }
}
BENCHMARK(BM_SolveRectangle);

void BM_StairTiling(benchmark::State& state) {
    const Int k = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(grid::stair_tiling(k, k).paths.size());
}
BENCHMARK(BM_StairTiling)->Range(4, 256);

void BM_ConstructTwoPlusOne(benchmark::State& state) {
    const GapSet g({{1, 1}, {9, 1}, {2970, 1}});
    for (auto _ : state) benchmark::DoNotOptimize(construct::construct(g, {2, 1}).tiling.length);
}
BENCHMARK(BM_ConstructTwoPlusOne);

}  // namespace
BENCHMARK_MAIN();
