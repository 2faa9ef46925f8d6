#include <benchmark/benchmark.h>

#include "tomolyap/tomography.hpp"

using namespace tomolyap;

static void BM_ForwardTomogram(benchmark::State& state) {
    const Gaussian g{0.2, -0.1, 1.0, 0.7, 0.3};
    const GridSpec x = default_x_grid(g, {0.6, 0.8});
    for (auto _ : state) benchmark::DoNotOptimize(forward_tomogram(g, {0.6, 0.8}, x));
}
BENCHMARK(BM_ForwardTomogram);

static void BM_TomogramSet(benchmark::State& state) {
    const Gaussian g{0.2, -0.1, 1.0, 0.7, 0.3};
    const GridSpec x = common_x_grid(g);
    for (auto _ : state) benchmark::DoNotOptimize(tomogram_set(g, x, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_TomogramSet)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMicrosecond);

static void BM_InverseTomogram(benchmark::State& state) {
    const Gaussian g{0.2, -0.1, 1.0, 0.7, 0.3};
    const auto tomograms = tomogram_set(g, common_x_grid(g));
    for (auto _ : state) benchmark::DoNotOptimize(inverse_tomogram(tomograms));
}
BENCHMARK(BM_InverseTomogram)->Unit(benchmark::kMillisecond);

static void BM_PureStateTomogram(benchmark::State& state) {
    const WaveFunction psi = coherent_state(0.3, -0.2, GridSpec{-12, 12, 2048});
    const GridSpec x{-6, 6, 256};
    for (auto _ : state) benchmark::DoNotOptimize(pure_state_tomogram(psi, {0.6, 0.8}, x));
}
BENCHMARK(BM_PureStateTomogram)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
