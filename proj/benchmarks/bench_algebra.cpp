#include "ue2/steenrod.hpp"
#include "ue2/unstable_alg.hpp"
#include "ue2/unstable_mod.hpp"

#include <benchmark/benchmark.h>

using namespace ue2;

static void BM_AdemRewrite(benchmark::State& state)
{
    const int a = int(state.range(0));
    OpElement x = OpElement::word(2, Flavor::A, Word{Letter{a, 0}, Letter{a, 0}, Letter{a, 0}});
    for (auto _ : state)
        benchmark::DoNotOptimize(adem_rewrite(x));
}
BENCHMARK(BM_AdemRewrite)->Arg(2)->Arg(4)->Arg(8);

static void BM_FreeModuleBasis(benchmark::State& state)
{
    const int d = int(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(free_a_basis(2, {Generator{"i", 1}}, d));
}
BENCHMARK(BM_FreeModuleBasis)->Arg(8)->Arg(16)->Arg(24);

static void BM_FreeAlgebra(benchmark::State& state)
{
    const int D = int(state.range(0));
    for (auto _ : state) {
        FreeAlgebra g(2, {2}, D);
        benchmark::DoNotOptimize(g.dim(D));
    }
}
BENCHMARK(BM_FreeAlgebra)->Arg(8)->Arg(12)->Arg(16);
