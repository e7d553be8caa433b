#include <benchmark/benchmark.h>

#include "fpt/brownian_fpt.hpp"
#include "fpt/fpt_transform.hpp"
#include "fpt/heat_polynomials.hpp"
#include "fpt/montecarlo.hpp"

using namespace fpt;

static void BM_VolterraCurved(benchmark::State& state)
{
    const auto b = MovingBoundary::from_slope(1.0, [](double t) { return 1.0 / (1.0 + t); }, 4.0);
    const auto grid = uniform_time_grid(4.0, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(volterra_fpt_density(b, 0.0, grid));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_VolterraCurved)->RangeMultiplier(2)->Range(256, 2048)->Complexity(benchmark::oNSquared);

static void BM_TwoSidedSeries(benchmark::State& state)
{
    double t = 0.01;
    for (auto _ : state) {
        benchmark::DoNotOptimize(two_sided_first_exit_density(0.5, 1.0, t));
        t = t > 5.0 ? 0.01 : t * 1.01;
    }
}
BENCHMARK(BM_TwoSidedSeries);

static void BM_BoundedDensityCdf(benchmark::State& state)
{
    const auto h = make_catalog_solution(HeatKind::linear_x, {});
    for (auto _ : state) {
        const auto d = bounded_fpt_density(h, 0.5, 1.5, 8.0);
        benchmark::DoNotOptimize(cdf(d, 4.0));
    }
}
BENCHMARK(BM_BoundedDensityCdf);

static void BM_HeatPolyW(benchmark::State& state)
{
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(assoc_w(n, 1.3, 0.7));
}
BENCHMARK(BM_HeatPolyW)->Arg(2)->Arg(10)->Arg(40);

static void BM_SimulateBridge(benchmark::State& state)
{
    const auto h = make_catalog_solution(HeatKind::gaussian_kernel, {3.0});
    const auto p = make_process("bridge", h, 1.0, 3.0);
    const auto b = MovingBoundary::affine(2.0, -1.0, 3.0);
    SimConfig cfg;
    cfg.paths = static_cast<std::size_t>(state.range(0));
    cfg.seed = 1;
    for (auto _ : state)
        benchmark::DoNotOptimize(simulate_paths(p, b, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateBridge)->Arg(500)->Arg(5500)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
