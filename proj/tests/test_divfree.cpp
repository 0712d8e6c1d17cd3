#include <gtest/gtest.h>

#include "homoglab/divfree.hpp"
#include "homoglab/errors.hpp"
#include "homoglab/spectral.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace homoglab {
namespace {

using test::Gen;

TEST(Spectral, ForwardMatchesNaiveDft)
{
    Gen gen(11);
    for (int trial = 0; trial < 5; ++trial) {
        const int m1 = gen.even(2, 16), m2 = gen.even(2, 16);
        const GridField f = gen.noise(Grid::periodic({m1, m2}), 2);
        const Spectrum s = spectral_forward(f);
        for (int c = 0; c < 2; ++c) {
            const auto ref = oracle::dft2(f.data.data(), m1, m2, 2, c);
            for (int k1 = 0; k1 < m1; ++k1)
                for (int k2 = 0; k2 < m2; ++k2) {
                    const int lam[2] = {k1, k2};
                    // the library reads index M/2 as +M/2, the oracle as -M/2; on
                    // cell-centered nodes the two coefficients differ by a sign
                    const double sign = (2 * k1 == m1 ? -1.0 : 1.0) * (2 * k2 == m2 ? -1.0 : 1.0);
                    EXPECT_LT(std::abs(s.at(lam, c) - sign * ref[k1 * m2 + k2]), 1e-13)
                        << "m = " << m1 << "x" << m2 << " k = " << k1 << "," << k2;
                }
        }
    }
}

TEST(Spectral, RoundTrip)
{
    Gen gen(12);
    for (int trial = 0; trial < 10; ++trial) {
        const int dims = gen.integer(1, 3);
        std::vector<int> sizes(dims);
        for (auto& m : sizes)
            m = gen.even(2, dims == 3 ? 8 : 24);
        const GridField f = gen.noise(Grid::periodic(sizes), gen.integer(1, 3));
        const GridField g = spectral_inverse(spectral_forward(f));
        EXPECT_LT(test::max_abs_diff(f.data, g.data), 1e-13);
    }
}

TEST(Spectral, RejectsBox)
{
    GridField f(Grid::unit_box(2, 4), 1);
    EXPECT_THROW(spectral_forward(f), InvalidArgument);
}

class DivfreeProperty : public ::testing::TestWithParam<std::uint64_t> {};

TEST_P(DivfreeProperty, IdempotentAndSolenoidal)
{
    Gen gen(GetParam());
    const int m1 = gen.even(4, 32), m2 = gen.even(4, 32);
    const GridField r = gen.noise(Grid::periodic({m1, m2}), 2);
    const GridField p = divfree_project(r);
    const GridField pp = divfree_project(p);
    EXPECT_LT(test::max_abs_diff(p.data, pp.data), 1e-12);
    EXPECT_LT(oracle::divergence_max(p.data.data(), m1, m2), 1e-12);
    EXPECT_LT(spectral_divergence(p), 1e-12);
}

TEST_P(DivfreeProperty, SelfAdjointContraction)
{
    Gen gen(GetParam() + 100);
    const Grid g = Grid::periodic({gen.even(4, 24), gen.even(4, 24)});
    const GridField a = gen.noise(g, 2), b = gen.noise(g, 2);
    const GridField pa = divfree_project(a), pb = divfree_project(b);
    EXPECT_NEAR(dot(pa.data, b.data), dot(a.data, pb.data), 1e-10);
    EXPECT_LE(norm2(pa.data), norm2(a.data) * (1 + 1e-14));
    // the complement is orthogonal to the range
    std::vector<double> q(a.data.size());
    for (std::size_t i = 0; i < q.size(); ++i)
        q[i] = a.data[i] - pa.data[i];
    EXPECT_NEAR(dot(q, pb.data), 0.0, 1e-10);
}

INSTANTIATE_TEST_SUITE_P(Seeds, DivfreeProperty, ::testing::Range<std::uint64_t>(1, 9));

TEST(Divfree, KillsGradientsAndKeepsCurls)
{
    const Grid g = Grid::periodic({32, 32});
    // grad phi with phi = sin(2 pi x1) cos(4 pi x2): removed entirely
    const GridField grad = test::sample(g, 2, [](std::span<const double> x, std::span<double> v) {
        v[0] = 2 * test::pi * std::cos(2 * test::pi * x[0]) * std::cos(4 * test::pi * x[1]);
        v[1] = -4 * test::pi * std::sin(2 * test::pi * x[0]) * std::sin(4 * test::pi * x[1]);
    });
    EXPECT_LT(test::max_abs(divfree_project(grad).data), 1e-12);
    // (-d2 psi, d1 psi) for psi = cos(2 pi x1) sin(2 pi x2): kept exactly
    const GridField curl = test::sample(g, 2, [](std::span<const double> x, std::span<double> v) {
        v[0] = -2 * test::pi * std::cos(2 * test::pi * x[0]) * std::cos(2 * test::pi * x[1]);
        v[1] = -2 * test::pi * std::sin(2 * test::pi * x[0]) * std::sin(2 * test::pi * x[1]);
    });
    EXPECT_LT(test::max_abs_diff(divfree_project(curl).data, curl.data), 1e-12);
}

TEST(Divfree, RemovesTheMean)
{
    GridField c(Grid::periodic({8, 6}), 2);
    for (std::size_t i = 0; i < c.nodes(); ++i) {
        c.at(i, 0) = 1.5;
        c.at(i, 1) = -0.25;
    }
    // the range is zero-mean fields, so constants are annihilated
    EXPECT_EQ(test::max_abs(divfree_project(c).data), 0.0);
}

TEST(Divfree, RejectsWrongShape)
{
    EXPECT_THROW(divfree_project(GridField(Grid::periodic({8, 8}), 3)), ShapeError);
    EXPECT_THROW(divfree_project(GridField(Grid::unit_box(2, 8), 2)), InvalidArgument);
}

TEST(Divfree, YProjectionActsSliceWise)
{
    Gen gen(5);
    const Grid xg = Grid::unit_box(2, 3), yg = Grid::periodic({8, 8});
    const TwoScaleField w = gen.noise(xg, yg, 2);
    const TwoScaleField p = divfree_project_y(w);
    for (std::size_t x = 0; x < xg.count(); ++x) {
        GridField s(yg, 2, std::vector<double>(w.slice(x), w.slice(x) + w.slice_size()));
        const GridField ps = divfree_project(s);
        EXPECT_LT(test::max_abs_diff(ps.data, std::vector<double>(p.slice(x), p.slice(x) + p.slice_size())), 1e-14);
    }
}

}  // namespace
}  // namespace homoglab
