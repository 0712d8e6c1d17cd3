#include <gtest/gtest.h>

#include "homoglab/errors.hpp"
#include "homoglab/example51.hpp"
#include "homoglab/norms.hpp"
#include "support.hpp"

namespace homoglab {
namespace {

using test::pi;

TEST(ExamplePhi, LinearFieldGivesAffinePotential)
{
    // u = (-x1, 0) on the unit square: phi = x1 - 1/2
    const Grid g = Grid::unit_box(2, 24);
    const GridField u = test::sample(g, 2, [](std::span<const double> x, std::span<double> v) {
        v[0] = -x[0];
        v[1] = 0.0;
    });
    const GridField phi = example_phi(u);
    std::vector<double> x(2);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.count(); ++i) {
        g.coordinates(i, x);
        worst = std::max(worst, std::abs(phi.at(i, 0) - (x[0] - 0.5)));
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(ExamplePhi, SolenoidalFieldGivesZero)
{
    const Grid g = Grid::box({0.0, 0.0}, {2.0, 1.0}, {16, 8});
    // u1 depends on x2 only and u2 on x1 only: discretely divergence-free
    const GridField u = test::sample(g, 2, [](std::span<const double> x, std::span<double> v) {
        v[0] = std::exp(x[1]) - 0.3;
        v[1] = std::cos(pi * x[0]) + x[0] * x[0];
    });
    EXPECT_LT(test::max_abs(example_phi(u).data), 1e-10);
}

TEST(ExampleClosedForm, ZeroAndLinear)
{
    const Grid g = Grid::unit_box(2, 16);
    EXPECT_EQ(example_energy_closed_form(GridField(g, 2)), 0.0);
    const GridField u = test::sample(g, 2, [](std::span<const double> x, std::span<double> v) {
        v[0] = -x[0];
        v[1] = 0.0;
    });
    // int x1^2 + int (x1 - 1/2)^2 with the midpoint rule on 16 cells
    const double h = 1.0 / 16;
    double a = 0.0, b = 0.0;
    for (int j = 0; j < 16; ++j) {
        const double t = (j + 0.5) * h;
        a += t * t * h;
        b += (t - 0.5) * (t - 0.5) * h;
    }
    EXPECT_NEAR(example_energy_closed_form(u), a + b, 1e-12);
}

TEST(Nonlocality, FlagIsConsistentWithTheInequality)
{
    test::Gen gen(81);
    for (int trial = 0; trial < 20; ++trial) {
        const double xi1 = gen.uniform(-2.0, 2.0), xi2 = gen.uniform(-2.0, 2.0);
        const double eps = gen.uniform(0.05, 0.3), delta = gen.uniform(0.001, 0.1);
        const NonlocalityReport r = nonlocality_report(xi1, xi2, eps, delta);
        EXPECT_EQ(r.violated, r.lhs > r.rhs);
        EXPECT_GE(r.full, 0.0);
        EXPECT_GE(r.inner, 0.0);
        EXPECT_GE(r.outer, 0.0);
    }
}

TEST(Nonlocality, ReferenceCaseViolatesAndCrosschecks)
{
    NonlocalityCrosscheck cc;
    cc.points_per_unit = 32;
    const NonlocalityReport r = nonlocality_report(1.0, 0.0, 0.2, 0.01, cc);
    EXPECT_TRUE(r.violated);
    ASSERT_TRUE(r.numeric.has_value());
    EXPECT_LT(r.numeric->full_rel_error, 0.05);
    EXPECT_LT(r.numeric->inner_rel_error, 0.05);
    EXPECT_NEAR(r.numeric->outer, r.outer, 1e-8);
}

TEST(Nonlocality, ArgumentChecks)
{
    EXPECT_THROW(nonlocality_report(1.0, 0.0, 0.0, 0.01), InvalidArgument);
    EXPECT_THROW(nonlocality_report(1.0, 0.0, 0.2, -0.01), InvalidArgument);
}

}  // namespace
}  // namespace homoglab
