#include <gtest/gtest.h>

#include "homoglab/constraints.hpp"
#include "homoglab/errors.hpp"
#include "homoglab/example51.hpp"
#include "support.hpp"

namespace homoglab {
namespace {

std::pair<GridField, TwoScaleField> split(const TwoScaleField& v)
{
    GridField u(v.xgrid, v.components);
    TwoScaleField w = v;
    const double ny = static_cast<double>(v.ygrid.count());
    for (std::size_t x = 0; x < v.xgrid.count(); ++x)
        for (std::size_t y = 0; y < v.ygrid.count(); ++y)
            for (int c = 0; c < v.components; ++c)
                u.at(x, c) += v.at(x, y, c) / ny;
    for (std::size_t x = 0; x < v.xgrid.count(); ++x)
        for (std::size_t y = 0; y < v.ygrid.count(); ++y)
            for (int c = 0; c < v.components; ++c)
                w.at(x, y, c) -= u.at(x, c);
    return {u, w};
}

GridField linear_u(const Grid& g)
{
    return test::sample(g, 2, [](std::span<const double> x, std::span<double> v) {
        v[0] = -x[0];
        v[1] = 0.0;
    });
}

TEST(AffineProjection, LandsOnConstraintSet)
{
    test::Gen gen(41);
    const Grid xg = Grid::unit_box(2, 8), yg = Grid::periodic({8, 8});
    const CoefficientSet a = benchmark_coefficients(yg);
    const GridField u = linear_u(xg);
    for (int trial = 0; trial < 3; ++trial) {
        const TwoScaleField w = gen.noise(xg, yg, 2);
        ProjectionStats stats;
        const TwoScaleField p = affine_feasibility_project(w, u, a, {1e-10, 0}, &stats);
        const ResidualReport r = constraint_residuals(u, p, a);
        EXPECT_LT(r.worst(), 1e-8);
        EXPECT_LT(r.mean_residual, 1e-12);
        EXPECT_GT(stats.iterations, 0);
        EXPECT_LE(stats.final_residual, 1e-10 * std::max(1.0, stats.initial_residual));
    }
}

TEST(AffineProjection, IsAnOrthogonalProjection)
{
    test::Gen gen(42);
    const Grid xg = Grid::unit_box(2, 6), yg = Grid::periodic({8, 8});
    const CoefficientSet a = benchmark_coefficients(yg);
    const GridField u = linear_u(xg);
    const ProjectionOptions opt{1e-11, 0};
    const TwoScaleField w1 = gen.noise(xg, yg, 2), w2 = gen.noise(xg, yg, 2);
    const TwoScaleField p1 = affine_feasibility_project(w1, u, a, opt);
    const TwoScaleField p2 = affine_feasibility_project(w2, u, a, opt);
    const TwoScaleField pp = affine_feasibility_project(p1, u, a, opt);

    std::vector<double> normal(w1.data.size()), tangent(w1.data.size());
    for (std::size_t i = 0; i < normal.size(); ++i) {
        normal[i] = w1.data[i] - p1.data[i];
        tangent[i] = p2.data[i] - p1.data[i];
    }
    EXPECT_NEAR(dot(normal, tangent), 0.0, 1e-7 * norm2(normal) * norm2(tangent));
    EXPECT_LT(test::max_abs_diff(pp.data, p1.data), 1e-8);
}

TEST(AffineProjection, InfeasibleWhenMeanFluxDiverges)
{
    // constant coefficients: the corrector has zero y-mean and cannot cancel div u = 1
    const Grid xg = Grid::unit_box(2, 6), yg = Grid::periodic({4, 4});
    const GridField u = test::sample(xg, 2, [](std::span<const double> x, std::span<double> v) {
        v[0] = x[0];
        v[1] = 0.0;
    });
    TwoScaleField w(xg, yg, 2);
    EXPECT_THROW(affine_feasibility_project(w, u, identity_rows(yg)), InfeasibleConstraint);
}

TEST(CoupledProjection, IdempotentAndFeasible)
{
    test::Gen gen(43);
    const Grid xg = Grid::unit_box(2, 8), yg = Grid::periodic({8, 8});
    const CoefficientSet a = benchmark_coefficients(yg);
    for (int trial = 0; trial < 3; ++trial) {
        const TwoScaleField v = gen.noise(xg, yg, 2);
        const TwoScaleField p = coupled_project(v, a);
        const TwoScaleField pp = coupled_project(p, a);
        EXPECT_LT(test::max_abs_diff(pp.data, p.data), 1e-9);
        const auto [u, w] = split(p);
        const ResidualReport r = constraint_residuals(u, w, a);
        EXPECT_LT(r.x_residual, 1e-8);
        EXPECT_LT(r.y_residual_max, 1e-8);
    }
}

TEST(CoupledProjection, FixesTheBenchmarkPair)
{
    const Grid xg = Grid::unit_box(2, 8), yg = Grid::periodic({16, 16});
    const CoefficientSet a = benchmark_coefficients(yg);
    TwoScaleField v(xg, yg, 2);
    std::vector<double> x(2);
    for (std::size_t i = 0; i < xg.count(); ++i) {
        xg.coordinates(i, x);
        for (std::size_t q = 0; q < yg.count(); ++q) {
            const double amp = a.value(q, 0, 0, 0) - 1.0;
            v.at(i, q, 0) = -x[0] + amp * (x[0] - 0.5);
        }
    }
    const TwoScaleField p = coupled_project(v, a);
    EXPECT_LT(test::max_abs_diff(p.data, v.data), 1e-9);
}

TEST(Residuals, ShapeChecks)
{
    const Grid xg = Grid::unit_box(2, 4), yg = Grid::periodic({4, 4});
    const CoefficientSet a = identity_rows(yg);
    GridField u(xg, 2);
    TwoScaleField w(Grid::unit_box(2, 5), yg, 2);
    EXPECT_THROW(constraint_residuals(u, w, a), ShapeError);
}

}  // namespace
}  // namespace homoglab
