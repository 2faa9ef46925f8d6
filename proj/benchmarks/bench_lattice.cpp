#include <benchmark/benchmark.h>

#include "tomolyap/standard_map.hpp"
#include "tomolyap/symbolic_expansion.hpp"

using namespace tomolyap;

static void BM_StepPeriodQuantum(benchmark::State& state) {
    StandardMapParams p;
    p.hbar = 1.0;
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        GField f = init_gfield(p, n);
        for (int t = 0; t < n; ++t) f.advance();
        benchmark::DoNotOptimize(f.at(1, 1));
    }
}
BENCHMARK(BM_StepPeriodQuantum)->Arg(25)->Arg(50)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_StepPeriodClassicalQuad(benchmark::State& state) {
    StandardMapParams p;
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        GField f = init_gfield(p, n, {kDefaultMemoryBudget, LatticeArithmetic::Quad});
        for (int t = 0; t < n; ++t) f.advance();
        benchmark::DoNotOptimize(f.at(1, 1));
    }
}
BENCHMARK(BM_StepPeriodClassicalQuad)->Arg(20)->Arg(40)->Arg(60)->Unit(benchmark::kMillisecond);

static void BM_RunStandardMap(benchmark::State& state) {
    StandardMapParams p;
    p.gamma = -1.0;
    for (auto _ : state) benchmark::DoNotOptimize(run_standard_map(p, 200).estimate.slope);
}
BENCHMARK(BM_RunStandardMap)->Unit(benchmark::kMillisecond);

static void BM_SymbolicExpand(benchmark::State& state) {
    StandardMapParams p;
    p.hbar = 1.0;
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(symbolic_expand(p, n));
}
BENCHMARK(BM_SymbolicExpand)->DenseRange(4, 10, 2)->Unit(benchmark::kMicrosecond);
