#include <random>

#include <benchmark/benchmark.h>

#include "tomolyap/classical_oracle.hpp"
#include "tomolyap/matrix_exponential.hpp"
#include "tomolyap/quadratic_floquet.hpp"

using namespace tomolyap;

static void BM_MatrixExponential(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::MatrixXd a(dim, dim);
    for (int i = 0; i < a.size(); ++i) a(i) = n(rng);
    for (auto _ : state) benchmark::DoNotOptimize(matrix_exponential(a));
}
BENCHMARK(BM_MatrixExponential)->Arg(2)->Arg(4);

static void BM_CatLyapunov(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(cat_lyapunov(CatVariant::H1));
}
BENCHMARK(BM_CatLyapunov);

static void BM_HarmonicSeries(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(harmonic_derivative_series(5.0, 200));
}
BENCHMARK(BM_HarmonicSeries);

static void BM_TangentOracle(benchmark::State& state) {
    const KickedMapSpec spec = standard_map_spec(1.0);
    for (auto _ : state) benchmark::DoNotOptimize(tangent_map_lyapunov(spec, 10000));
}
BENCHMARK(BM_TangentOracle)->Unit(benchmark::kMicrosecond);
