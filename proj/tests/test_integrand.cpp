#include <gtest/gtest.h>

#include "homoglab/coefficients.hpp"
#include "homoglab/integrand.hpp"
#include "support.hpp"

namespace homoglab {
namespace {

std::vector<Integrand> convex_family()
{
    return {quadratic(), quadratic(2.5), regularized_power(1.5), regularized_power(3.0), quadratic_quartic(0.5)};
}

// Central differences computed here, independently of check_integrand.
TEST(Integrand, GradientMatchesFiniteDifferences)
{
    test::Gen gen(71);
    for (const Integrand& f : convex_family()) {
        for (int trial = 0; trial < 20; ++trial) {
            const int d = gen.integer(1, 4);
            std::vector<double> v(d), g(d);
            for (auto& c : v)
                c = gen.uniform(-2.0, 2.0);
            f.gradient(v, g);
            for (int i = 0; i < d; ++i) {
                const double h = 1e-5 * (1.0 + std::abs(v[i]));
                std::vector<double> vp = v, vm = v;
                vp[i] += h;
                vm[i] -= h;
                const double fd = (f(vp) - f(vm)) / (2 * h);
                EXPECT_NEAR(g[i], fd, 1e-6 * (1.0 + std::abs(fd))) << f.name;
            }
        }
    }
}

TEST(Integrand, ConvexityAlongRandomSegments)
{
    test::Gen gen(72);
    for (const Integrand& f : convex_family()) {
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> a(2), b(2), m(2);
            for (int i = 0; i < 2; ++i) {
                a[i] = gen.uniform(-3.0, 3.0);
                b[i] = gen.uniform(-3.0, 3.0);
            }
            const double t = gen.uniform(0.0, 1.0);
            for (int i = 0; i < 2; ++i)
                m[i] = (1 - t) * a[i] + t * b[i];
            EXPECT_LE(f(m), (1 - t) * f(a) + t * f(b) + 1e-12) << f.name;
        }
        EXPECT_TRUE(f.convex);
    }
}

TEST(Integrand, GrowthBound)
{
    test::Gen gen(73);
    for (const Integrand& f : convex_family()) {
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> v(3);
            for (auto& c : v)
                c = gen.uniform(-20.0, 20.0);
            const double n = norm2(v);
            EXPECT_LE(f(v), f.C * (1.0 + std::pow(n, f.p)) + 1e-9) << f.name;
            EXPECT_GE(f(v), 0.0);
        }
    }
}

TEST(Integrand, BuiltinCheckAgrees)
{
    for (const Integrand& f : convex_family()) {
        const IntegrandCheck c = check_integrand(f, 2, 64, 7);
        EXPECT_TRUE(c.passed) << f.name << " rel " << c.max_relative_error << " growth " << c.max_growth_ratio;
        EXPECT_LE(c.max_growth_ratio, 1.0);
    }
}

TEST(Integrand, DoubleWellIsFlaggedNonconvex)
{
    const Integrand f = double_well();
    EXPECT_FALSE(f.convex);
    const double zero[2] = {0.0, 0.0}, well[2] = {1.0, 0.0}, other[2] = {-1.0, 0.0};
    // midpoint of the two wells lies above them
    EXPECT_GT(f(zero), 0.5 * (f(well) + f(other)));
}

TEST(Integrand, QuadraticValues)
{
    const Integrand f = quadratic(3.0);
    const double v[2] = {1.0, -2.0};
    EXPECT_DOUBLE_EQ(f(v), 15.0);
    EXPECT_DOUBLE_EQ(f.gradient_lipschitz(10.0), 6.0);
    EXPECT_DOUBLE_EQ(f.quadratic_coefficient, 3.0);
}

TEST(Integrand, DerivedValueInvertsTheOperator)
{
    // A = diag(2, 4) everywhere: f(A^{-1} xi) with f = |.|^2
    const Grid yg = Grid::periodic({4, 4});
    CoefficientSet a(2, 1, 2, yg);
    for (std::size_t q = 0; q < yg.count(); ++q) {
        a.value(q, 0, 0, 0) = 2.0;
        a.value(q, 1, 0, 1) = 4.0;
    }
    const AssembledOperator op = assemble(a);
    const double xi[2] = {2.0, 2.0};
    EXPECT_NEAR(derived_value(quadratic(), op, 3, xi), 1.0 + 0.25, 1e-14);
}

}  // namespace
}  // namespace homoglab
