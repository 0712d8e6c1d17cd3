#include <gtest/gtest.h>

#include "homoglab/errors.hpp"
#include "homoglab/norms.hpp"
#include "homoglab/unfolding.hpp"
#include "support.hpp"

namespace homoglab {
namespace {

using test::pi;

double smooth(std::span<const double> z)
{
    return std::exp(0.5 * z[0]) * std::cos(3.0 * z[1]) + z[0] * z[1];
}

TEST(Unfolding, MatchesPointFormula)
{
    // cell-centered samples: the unfolded point of a node pair is again a node
    for (double eps : {0.5, 0.25, 0.125}) {
        const Grid g = Grid::box({-1.0, 0.0}, {1.0, 1.0}, {32, 16});
        const GridField u = test::sample(g, 1, [](std::span<const double> x, std::span<double> v) { v[0] = smooth(x); });
        const TwoScaleField t = unfold(u, {eps});
        std::vector<double> x(2), y(2);
        double worst = 0.0;
        for (std::size_t i = 0; i < g.count(); ++i) {
            g.coordinates(i, x);
            for (std::size_t q = 0; q < t.ygrid.count(); ++q) {
                t.ygrid.coordinates(q, y);
                worst = std::max(worst, std::abs(t.at(i, q, 0) - smooth(unfolding_point(x, y, eps))));
            }
        }
        EXPECT_LT(worst, 1e-12) << "eps = " << eps;
    }
}

class UnfoldProperty : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(UnfoldProperty, IsometryOnUnionsOfCells)
{
    test::Gen gen(GetParam());
    const int cells = gen.integer(1, 4), m = gen.even(2, 8);
    const double eps = 1.0 / cells;
    const Grid g = Grid::box({0.0, 0.0}, {1.0, 2.0}, {cells * m, 2 * cells * m});
    const GridField u = gen.noise(g, gen.integer(1, 2));
    const TwoScaleField t = unfold(u, {eps});
    EXPECT_NEAR(l2_norm(t), lp_norm(u, 2.0), 1e-12 * (1.0 + lp_norm(u, 2.0)));
}

TEST_P(UnfoldProperty, PeriodicOscillationUnfoldsToItsProfile)
{
    // u(x) = b(x / eps) unfolds to b(y) on every x
    test::Gen gen(GetParam() + 50);
    const int k1 = gen.integer(-3, 3), k2 = gen.integer(-3, 3);
    const double eps = 0.25;
    auto b = [&](double y1, double y2) { return std::cos(2 * pi * (k1 * y1 + k2 * y2)) + 0.25; };
    const Grid g = Grid::unit_box(2, 32);
    const GridField u = test::sample(g, 1, [&](std::span<const double> x, std::span<double> v) { v[0] = b(x[0] / eps, x[1] / eps); });
    const TwoScaleField t = unfold(u, {eps});
    std::vector<double> y(2);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.count(); ++i)
        for (std::size_t q = 0; q < t.ygrid.count(); ++q) {
            t.ygrid.coordinates(q, y);
            worst = std::max(worst, std::abs(t.at(i, q, 0) - b(y[0], y[1])));
        }
    EXPECT_LT(worst, 1e-12);
}

TEST_P(UnfoldProperty, TruncationIsARadialClamp)
{
    test::Gen gen(GetParam() + 90);
    const GridField u = gen.noise(Grid::unit_box(2, 6), 3);
    const double k = gen.uniform(0.2, 2.0);
    const GridField t = truncate(u, k);
    for (std::size_t i = 0; i < u.nodes(); ++i) {
        const double mag = norm2(u.node_values(i)), tmag = norm2(t.node_values(i));
        EXPECT_NEAR(tmag, std::min(mag, k), 1e-14);
        // direction is kept
        EXPECT_NEAR(dot(u.node_values(i), t.node_values(i)), mag * tmag, 1e-12);
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, UnfoldProperty, ::testing::Range<std::uint64_t>(1, 7));

TEST(Unfolding, DefectShrinksForSmoothFields)
{
    const GridField u = test::sample(Grid::unit_box(2, 64), 1,
                                     [](std::span<const double> x, std::span<double> v) { v[0] = std::sin(2 * pi * x[0]); });
    const std::vector<double> schedule{0.25, 0.125, 0.0625};
    const auto d = unfold_defect(u, schedule);
    ASSERT_EQ(d.size(), 3u);
    EXPECT_LT(d[1], d[0]);
    EXPECT_LT(d[2], d[1]);
}

TEST(Unfolding, Rejections)
{
    const Grid g = Grid::unit_box(2, 16);
    GridField u(g, 1);
    EXPECT_THROW(unfold(u, {0.3}), InvalidArgument);     // not a union of cells
    EXPECT_THROW(unfold(u, {1.0 / 16}), InvalidArgument);  // one sample per cell
    EXPECT_THROW(unfold(u, {0.0}), InvalidArgument);
    EXPECT_THROW(unfold(GridField(Grid::periodic({16, 16}), 1), {0.25}), InvalidArgument);
    EXPECT_THROW(truncate(u, 0.0), InvalidArgument);
}

TEST(TwoScalePairing, MatchesTheProductLimit)
{
    // u_eps = psi(x) b(x/eps) against psi(x) b(y): limit int psi^2 * int b^2
    auto psi = [](std::span<const double> x) { return std::sin(pi * x[0]) * std::sin(pi * x[1]); };
    auto b = [](double y1, double y2) { return std::cos(2 * pi * y1) + 0.5 * std::sin(2 * pi * y2); };
    const double limit = 0.25 * 0.625;
    const Grid g = Grid::unit_box(2, 256);
    TwoScaleTest phi = [&](std::span<const double> x, std::span<const double> y, std::span<double> out) {
        out[0] = psi(x) * b(y[0], y[1]);
    };
    // psi vanishes on the boundary and b has whole periods per cell, so the
    // midpoint sums are exact up to roundoff for every admissible eps
    for (double eps : {0.125, 0.0625, 0.03125}) {
        const GridField u = test::sample(g, 1, [&](std::span<const double> x, std::span<double> v) {
            v[0] = psi(x) * b(x[0] / eps, x[1] / eps);
        });
        EXPECT_NEAR(two_scale_pairing(u, phi, eps).value, limit, 1e-12) << "eps = " << eps;
    }
}

TEST(Interpolation, PeriodicTrigInterpolationIsExactForLowModes)
{
    const Grid yg = Grid::periodic({12, 10});
    auto f = [](std::span<const double> y) { return std::cos(2 * pi * (2 * y[0] - y[1])) + 0.5 * std::sin(2 * pi * y[1]); };
    const GridField s = test::sample(yg, 1, [&](std::span<const double> y, std::span<double> v) { v[0] = f(y); });
    test::Gen gen(61);
    for (int trial = 0; trial < 20; ++trial) {
        const double y[2] = {gen.uniform(-1.0, 1.0), gen.uniform(-1.0, 1.0)};
        double out = 0.0;
        interpolate_periodic(yg, s.data.data(), 1, y, {&out, 1});
        EXPECT_NEAR(out, f(y), 1e-12);
    }
}

}  // namespace
}  // namespace homoglab
