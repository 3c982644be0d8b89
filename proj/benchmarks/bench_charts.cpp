#include "ue2/adams_e2.hpp"
#include "ue2/gh_e2.hpp"
#include "ue2/resolution.hpp"
#include "ue2/spaces.hpp"

#include <benchmark/benchmark.h>

using namespace ue2;

static void BM_Resolution(benchmark::State& state)
{
    const int D = int(state.range(0));
    SpaceModel X = builtin_space("K2", 2, D);
    for (auto _ : state) {
        CotripleResolution R(X.cohomology, 2, D);
        benchmark::DoNotOptimize(R.level(2).dim(D));
    }
}
BENCHMARK(BM_Resolution)->Arg(6)->Arg(8)->Unit(benchmark::kMillisecond);

static void BM_AdamsChart(benchmark::State& state)
{
    SpaceModel X = builtin_space("S2", 2, 10), Y = builtin_space("S1", 2, 10);
    for (auto _ : state)
        benchmark::DoNotOptimize(adams_chart(X, Y, 2, int(state.range(0)), 10));
}
BENCHMARK(BM_AdamsChart)->Arg(4)->Arg(6)->Unit(benchmark::kMillisecond);

static void BM_GhRun(benchmark::State& state)
{
    SpaceModel X = builtin_space("S2", 2, 10), Y = builtin_space("S1", 2, 10);
    for (auto _ : state)
        benchmark::DoNotOptimize(gh_run(X, Y, 2, 6, 10, int(state.range(0))));
}
BENCHMARK(BM_GhRun)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
