#include <benchmark/benchmark.h>

#include <random>

#include "homoglab/constraints.hpp"
#include "homoglab/divfree.hpp"
#include "homoglab/energy.hpp"
#include "homoglab/example51.hpp"
#include "homoglab/unfolding.hpp"

namespace {

using namespace homoglab;

GridField noise(const Grid& g, int comps, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n;
    GridField f(g, comps);
    for (auto& v : f.data)
        v = n(rng);
    return f;
}

TwoScaleField noise(const Grid& x, const Grid& y, int comps, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n;
    TwoScaleField f(x, y, comps);
    for (auto& v : f.data)
        v = n(rng);
    return f;
}

void BM_DivfreeProject(benchmark::State& state)
{
    const int m = static_cast<int>(state.range(0));
    const GridField r = noise(Grid::periodic({m, m}), 2, 1);
    for (auto _ : state)
        benchmark::DoNotOptimize(divfree_project(r));
}
BENCHMARK(BM_DivfreeProject)->RangeMultiplier(2)->Range(32, 256)->Unit(benchmark::kMillisecond);

void BM_CoupledProject(benchmark::State& state)
{
    const int m = static_cast<int>(state.range(0));
    const Grid yg = Grid::periodic({m, m});
    const TwoScaleField v = noise(Grid::unit_box(2, m), yg, 2, 2);
    const CoefficientSet a = benchmark_coefficients(yg);
    for (auto _ : state)
        benchmark::DoNotOptimize(coupled_project(v, a));
}
BENCHMARK(BM_CoupledProject)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Unfold(benchmark::State& state)
{
    const GridField u = noise(Grid::unit_box(2, 128), 2, 3);
    const double eps = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(unfold(u, {eps}));
}
BENCHMARK(BM_Unfold)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

// Full PCG solve of the constraint normal equations from a random start.
void BM_AffineProjection(benchmark::State& state)
{
    const int m = static_cast<int>(state.range(0));
    const Grid xg = Grid::unit_box(2, m), yg = Grid::periodic({m, m});
    GridField u(xg, 2);
    std::vector<double> x(2);
    for (std::size_t i = 0; i < xg.count(); ++i) {
        xg.coordinates(i, x);
        u.at(i, 0) = -x[0];
    }
    const CoefficientSet a = benchmark_coefficients(yg);
    const TwoScaleField w = noise(xg, yg, 2, 4);
    for (auto _ : state)
        benchmark::DoNotOptimize(affine_feasibility_project(w, u, a));
}
BENCHMARK(BM_AffineProjection)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
