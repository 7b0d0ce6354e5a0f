#include <benchmark/benchmark.h>

#include <vector>

#include "depthdegen/angle_math.hpp"
#include "depthdegen/catalog.hpp"
#include "depthdegen/j_functions.hpp"
#include "depthdegen/monte_carlo.hpp"
#include "depthdegen/propagation.hpp"
#include "depthdegen/random.hpp"

using namespace depthdegen;

namespace {

void BM_Rho(benchmark::State& state) {
    int n = 16;
    for (auto _ : state) {
        benchmark::DoNotOptimize(rho(Width{n}));
        n = n == 4096 ? 16 : n + 1;
    }
}
BENCHMARK(BM_Rho);

void BM_FiniteStep(benchmark::State& state) {
    double x = to_log_sin_sq(0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(finite_step_full(x, Width{256}));
    }
}
BENCHMARK(BM_FiniteStep);

void BM_PredictFinite(benchmark::State& state) {
    const Architecture arch("bench", 256, std::vector<int>(static_cast<std::size_t>(state.range(0)), 256));
    for (auto _ : state) {
        benchmark::DoNotOptimize(predict_finite(arch, kHalfPi));
    }
}
BENCHMARK(BM_PredictFinite)->Arg(10)->Arg(100)->Arg(1000);

void BM_CatalogReport(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(degeneracy_report(builtin_catalog()));
    }
}
BENCHMARK(BM_CatalogReport);

void BM_Normals(benchmark::State& state) {
    CounterStream stream(1, StreamDomain::test, 0);
    NormalSampler normal;
    for (auto _ : state) {
        benchmark::DoNotOptimize(normal(stream));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Normals);

// One replica through 256 x depth.
void BM_Replica(benchmark::State& state) {
    const Architecture arch("bench", 256, std::vector<int>(static_cast<std::size_t>(state.range(1)), 256));
    McConfig cfg;
    cfg.replicas = 1;
    cfg.input = OrthogonalPair{0.1};
    cfg.sampler = state.range(0) == 0 ? Sampler::dense : Sampler::projected;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_replicas(arch, cfg));
        ++cfg.seed;
    }
    state.SetLabel(state.range(0) == 0 ? "dense" : "projected");
}
BENCHMARK(BM_Replica)->Args({0, 10})->Args({1, 10})->Args({0, 30})->Args({1, 30});

void BM_GaussianChain(benchmark::State& state) {
    const Architecture arch("bench", 256, std::vector<int>(30, 256));
    GaussianChainConfig cfg;
    cfg.num_samples = 1000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_gaussian_chain(arch, 0.1, cfg));
    }
}
BENCHMARK(BM_GaussianChain);

void BM_JNumeric(benchmark::State& state) {
    const int a = static_cast<int>(state.range(0));
    double theta = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(j_numeric(JQuery{a, a, theta}));
        theta = theta > 3.0 ? 0.1 : theta + 0.01;
    }
}
BENCHMARK(BM_JNumeric)->Arg(1)->Arg(4);

void BM_J11Closed(benchmark::State& state) {
    double theta = 0.1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(j11_closed(theta));
        theta = theta > 3.0 ? 0.1 : theta + 0.01;
    }
}
BENCHMARK(BM_J11Closed);

}  // namespace
BENCHMARK_MAIN();
