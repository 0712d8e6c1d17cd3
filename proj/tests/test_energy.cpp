#include <gtest/gtest.h>

#include "homoglab/divfree.hpp"
#include "homoglab/energy.hpp"
#include "homoglab/errors.hpp"
#include "homoglab/example51.hpp"
#include "support.hpp"

namespace homoglab {
namespace {

using test::pi;

GridField linear_u(const Grid& g)
{
    return test::sample(g, 2, [](std::span<const double> x, std::span<double> v) {
        v[0] = -x[0];
        v[1] = 0.0;
    });
}

TEST(RelaxedEnergy, BenchmarkMatchesClosedForm)
{
    // the peaked profile needs 32 y-samples before even dilations resolve it
    const Grid xg = Grid::unit_box(2, 16), yg = Grid::periodic({32, 32});
    const GridField u = linear_u(xg);
    const double closed = example_energy_closed_form(u);
    for (int n : {1, 2}) {
        RelaxationSpec spec;
        spec.n = n;
        const EnergyReport e = relaxed_energy(u, benchmark_coefficients(yg), quadratic(), spec);
        EXPECT_TRUE(e.feasible);
        EXPECT_TRUE(e.certified);
        EXPECT_NEAR(e.value, closed, 1e-3 * closed) << "n = " << n;
        EXPECT_LT(e.residuals.worst(), 1e-7);
        EXPECT_LT(e.w_mean_max, 1e-10);
    }
    EXPECT_NEAR(closed, 5.0 / 12.0, 2e-3);
}

TEST(RelaxedEnergy, InfeasibleRadiusGivesInfinity)
{
    const Grid xg = Grid::unit_box(2, 8), yg = Grid::periodic({8, 8});
    const GridField u = linear_u(xg);
    for (double r : {0.0, 1e-3}) {
        RelaxationSpec spec;
        spec.r = r;
        const EnergyReport e = relaxed_energy(u, benchmark_coefficients(yg), quadratic(), spec);
        EXPECT_FALSE(e.feasible);
        EXPECT_TRUE(std::isinf(e.value) && e.value > 0);
    }
}

TEST(RelaxedEnergy, RejectsNonconvexAndDegenerateInputs)
{
    const Grid xg = Grid::unit_box(2, 8), yg = Grid::periodic({8, 8});
    const GridField u = linear_u(xg);
    EXPECT_THROW(relaxed_energy(u, benchmark_coefficients(yg), double_well(), {}), InvalidArgument);
    CoefficientSet zero(2, 1, 2, yg);
    EXPECT_THROW(relaxed_energy(u, zero, quadratic(), {}), EllipticityViolation);
}

TEST(RelaxedEnergy, DivergenceFreeFieldNeedsNoCorrector)
{
    // identity coefficients and a solenoidal u: the energy is int |u|^2
    const Grid xg = Grid::unit_box(2, 16), yg = Grid::periodic({8, 8});
    const GridField u = test::sample(xg, 2, [](std::span<const double> x, std::span<double> v) {
        // curl of cos(pi x1) cos(pi x2)
        v[0] = -pi * std::cos(pi * x[0]) * std::sin(pi * x[1]);
        v[1] = pi * std::sin(pi * x[0]) * std::cos(pi * x[1]);
    });
    const EnergyReport e = relaxed_energy(u, identity_rows(yg), quadratic(), {});
    EXPECT_NEAR(e.value, integrate_integrand(u, quadratic()), 1e-10);
    EXPECT_LT(e.w_l2, 1e-8);
}

TEST(RelaxedEnergy, ConvexIntegrandByProjectedGradient)
{
    const Grid xg = Grid::unit_box(2, 8), yg = Grid::periodic({8, 8});
    const GridField u = linear_u(xg);
    const CoefficientSet a = benchmark_coefficients(yg);
    RelaxationSpec spec;
    spec.tol_energy = 1e-7;
    const EnergyReport q = relaxed_energy(u, a, quadratic(), spec);
    const EnergyReport qq = relaxed_energy(u, a, quadratic_quartic(0.5), spec);
    EXPECT_TRUE(qq.feasible);
    EXPECT_GT(qq.iterations, 0);
    EXPECT_LT(qq.residuals.worst(), 1e-6);
    // the quartic term only adds energy, and the quadratic minimizer is admissible
    EXPECT_GT(qq.value, q.value);
    EXPECT_LE(qq.value, integrate_integrand(u, quadratic_quartic(0.5)) + 1.0);
}

TEST(HomogenizedEstimate, SweepIsMonotoneInRadius)
{
    const Grid xg = Grid::unit_box(2, 8), yg = Grid::periodic({8, 8});
    RelaxationSpec spec;
    spec.r_sweep = {0.1, 1.0, 10.0};
    spec.n_sweep = {1, 2};
    const EnergyReport e = homogenized_estimate(linear_u(xg), benchmark_coefficients(yg), quadratic(), spec);
    EXPECT_EQ(e.table.size(), 6u);
    EXPECT_TRUE(e.monotone_in_r);
    double best = INFINITY;
    for (const auto& row : e.table)
        best = std::min(best, row.value);
    EXPECT_EQ(e.value, best);
    EXPECT_EQ(e.label, "upper estimate of F_A");

    spec.r_sweep = {-1.0};
    EXPECT_THROW(homogenized_estimate(linear_u(xg), benchmark_coefficients(yg), quadratic(), spec), InvalidArgument);
}

TEST(ConstantCoefficients, DilationIndependentAndJensen)
{
    const Grid xg = Grid::unit_box(2, 8), yg = Grid::periodic({8, 8});
    CoefficientSet a(2, 1, 2, yg);
    for (std::size_t q = 0; q < yg.count(); ++q) {
        a.value(q, 0, 0, 0) = 2.0;
        a.value(q, 0, 0, 1) = 0.5;
        a.value(q, 1, 0, 1) = 1.0;
    }
    const GridField u = test::sample(xg, 2, [](std::span<const double> x, std::span<double> v) {
        v[0] = std::sin(pi * x[1]);
        v[1] = 0.0;
    });
    const ConstantCoefficientReport r = constant_coefficient_check(u, a, quadratic(), {});
    EXPECT_TRUE(r.passed);
    EXPECT_TRUE(r.n_independent);
    EXPECT_NEAR(r.value_n1, r.value_n4, 1e-10);
    EXPECT_LT(r.corrector_mean_max, 1e-10);
}

}  // namespace
}  // namespace homoglab
