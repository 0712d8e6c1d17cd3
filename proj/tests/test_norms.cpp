#include <gtest/gtest.h>

#include "homoglab/errors.hpp"
#include "homoglab/norms.hpp"
#include "homoglab/sine_basis.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace homoglab {
namespace {

using test::pi;

TEST(Norms, LpOfConstantAndSine)
{
    GridField c(Grid::unit_box(2, 10), 1);
    for (auto& v : c.data)
        v = 3.0;
    EXPECT_NEAR(lp_norm(c, 2.0), 3.0, 1e-14);
    EXPECT_NEAR(lp_norm(c, 1.5), 3.0, 1e-14);

    // midpoint rule is exact for sin^2 on whole periods
    const GridField s = test::sample(Grid::periodic({16, 4}), 1,
                                     [](std::span<const double> x, std::span<double> v) { v[0] = std::sin(2 * pi * x[0]); });
    EXPECT_NEAR(lp_norm(s, 2.0), std::sqrt(0.5), 1e-14);
}

TEST(Norms, LpMatchesBruteForce)
{
    test::Gen gen(3);
    for (int trial = 0; trial < 10; ++trial) {
        const Grid g = Grid::box({0.0, -1.0}, {2.0, 0.5}, {gen.integer(2, 12), gen.integer(2, 12)});
        const GridField f = gen.noise(g, gen.integer(1, 3));
        const double p = gen.uniform(1.0, 4.0);
        EXPECT_NEAR(lp_norm(f, p), std::pow(oracle::lp_power(f, p), 1.0 / p), 1e-12);
    }
}

TEST(Norms, LpRejectsBadExponent)
{
    GridField f(Grid::unit_box(1, 4), 1);
    EXPECT_THROW(lp_norm(f, 0.5), InvalidArgument);
}

TEST(Norms, PeriodicHminusOneOfSineModes)
{
    // |sin(2 pi k x1)|_{H^-1} = |sin|_2 / (2 pi k)
    for (int k : {1, 2, 5}) {
        const GridField s = test::sample(Grid::periodic({32, 8}), 1, [k](std::span<const double> x, std::span<double> v) {
            v[0] = std::sin(2 * pi * k * x[0]);
        });
        EXPECT_NEAR(hminus1_periodic_norm(s), std::sqrt(0.5) / (2 * pi * k), 1e-13);
    }
}

TEST(Norms, DirichletHminusOneOfFirstEigenfunction)
{
    // g = sin(pi x1) sin(pi x2) = -Lap(g / 2 pi^2): |g|_{H^-1}^2 = int g^2 / (2 pi^2)
    const GridField g = test::sample(Grid::unit_box(2, 24), 1, [](std::span<const double> x, std::span<double> v) {
        v[0] = std::sin(pi * x[0]) * std::sin(pi * x[1]);
    });
    const double discrete_l2_sq = 0.25;
    EXPECT_NEAR(hminus1_dirichlet_norm(g), std::sqrt(discrete_l2_sq / (2 * pi * pi)), 2e-3);
}

TEST(Norms, DomainChecks)
{
    EXPECT_THROW(hminus1_periodic_norm(GridField(Grid::unit_box(2, 4), 1)), InvalidArgument);
    EXPECT_THROW(hminus1_dirichlet_norm(GridField(Grid::periodic({4, 4}), 1)), InvalidArgument);
}

TEST(SineBasis, WeakDivergenceMatchesSineSums)
{
    test::Gen gen(21);
    for (int trial = 0; trial < 4; ++trial) {
        const Grid box = Grid::box({-0.5, 0.0}, {1.0, 2.0}, {gen.integer(2, 10), gen.integer(2, 10)});
        const GridField flux = gen.noise(box, 2);
        const SineBasis basis(box);
        EXPECT_NEAR(norm2(basis.weak_divergence(flux.data, 1)), oracle::weak_divergence_norm(box, flux.data), 1e-10);
    }
}

TEST(SineBasis, AnalyzeSynthesizeRoundTrip)
{
    test::Gen gen(22);
    const Grid box = Grid::box({0.0, 0.0}, {1.0, 3.0}, {10, 14});
    const SineBasis basis(box);
    const GridField f = gen.noise(box, 2);
    // analyze returns <g, psi_k>_h; divide by <psi_k, psi_k>_h for coefficients
    auto b = basis.analyze(f.data, 2);
    for (int k1 = 1; k1 <= 10; ++k1)
        for (int k2 = 1; k2 <= 14; ++k2)
            for (int c = 0; c < 2; ++c)
                b[((k1 - 1) * 14 + k2 - 1) * 2 + c] /= box.cell_volume() * basis.sine_norm_sq(0, k1) * basis.sine_norm_sq(1, k2);
    const auto back = basis.synthesize(b, 2);
    EXPECT_LT(test::max_abs_diff(back, f.data), 1e-12);
}

TEST(SineBasis, AdjointIdentity)
{
    test::Gen gen(23);
    const Grid box = Grid::box({0.0, 0.0}, {2.0, 1.0}, {8, 6});
    const SineBasis basis(box);
    const GridField flux = gen.noise(box, 2);
    std::vector<double> c(basis.modes());
    for (auto& v : c)
        v = gen.normal();
    const auto div = basis.weak_divergence(flux.data, 1);
    const auto adj = basis.weak_divergence_adjoint(c, 1);
    // adjoint with respect to the midpoint inner product
    EXPECT_NEAR(dot(div, c), box.cell_volume() * dot(flux.data, adj), 1e-10);
}

}  // namespace
}  // namespace homoglab
