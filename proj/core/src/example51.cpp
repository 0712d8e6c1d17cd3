#include "homoglab/example51.hpp"

#include <cmath>
#include <numbers>

#include "homoglab/errors.hpp"
#include "homoglab/sine_basis.hpp"

namespace homoglab {

namespace {

using std::numbers::pi;

void require_example_domain(const GridField& u)
{
    if (u.grid.is_periodic() || u.grid.dims() != 2)
        throw InvalidArgument("the example lives on a two-dimensional box");
    if (u.components != 2)
        throw ShapeError("the example acts on fields with two components");
}

GridField component(const GridField& u, int c)
{
    GridField out(u.grid, 1);
    for (std::size_t i = 0; i < u.nodes(); ++i)
        out.at(i, 0) = u.at(i, c);
    return out;
}

// Smallest cell count >= ppu * length for which every interface falls on a
// cell boundary, if one exists within a factor of four.
int aligned_cells(double length, const std::vector<double>& interfaces, double ppu)
{
    const int lo = std::max(2, static_cast<int>(std::ceil(ppu * length - 1e-9)));
    for (int m = lo; m <= 4 * lo; ++m) {
        bool ok = true;
        for (double t : interfaces) {
            const double pos = t / length * m;
            if (std::abs(pos - std::round(pos)) > 1e-7)
                ok = false;
        }
        if (ok)
            return m;
    }
    return lo;
}

double numeric_energy(const Grid& box, double xi1, double xi2, double eps, const NonlocalityCrosscheck& cc)
{
    const Grid ygrid = Grid::periodic({cc.y_size, cc.y_size});
    RelaxationSpec spec;
    spec.r = cc.r;
    const GridField u = nonlocality_field(box, xi1, xi2, eps);
    const EnergyReport rep = relaxed_energy(u, benchmark_coefficients(ygrid), quadratic(), spec);
    return rep.value;
}

double rel_error(double numeric, double exact)
{
    return std::abs(numeric - exact) / std::max(std::abs(exact), 1e-12);
}

}  // namespace

std::vector<double> benchmark_profile(int m)
{
    return make_profile(sample_profile([](double s) { return std::exp(8.0 * std::cos(2.0 * pi * s)); }, m));
}

CoefficientSet benchmark_coefficients(const Grid& ygrid, int dilation)
{
    if (ygrid.dims() != 2)
        throw InvalidArgument("the example needs a two-dimensional cell");
    return example51_coefficients(benchmark_profile(ygrid.size(1)), ygrid, dilation);
}

GridField example_phi(const GridField& u)
{
    require_example_domain(u);
    const Grid& g = u.grid;
    const int m1 = g.size(0), m2 = g.size(1);
    const SineBasis basis(g);
    // <u_1, cos(k1 ..) sin(k2 ..)> and <u_2, sin(k1 ..) cos(k2 ..)>
    const auto t1 = basis.analyze_mixed(component(u, 0).data, 1, 0);
    const auto t2 = basis.analyze_mixed(component(u, 1).data, 1, 1);
    const double w1 = pi / g.length(0), w2 = pi / g.length(1);

    std::vector<double> alpha(g.count(), 0.0);
    for (int k1 = 1; k1 < m1; ++k1)
        for (int k2 = 1; k2 <= m2; ++k2) {
            double pair = k1 * w1 * t1[static_cast<std::size_t>(k1) * m2 + (k2 - 1)];
            if (k2 < m2)
                pair += k2 * w2 * t2[static_cast<std::size_t>(k1 - 1) * m2 + k2];
            const double mass =
                k1 * w1 * g.cell_volume() * basis.cosine_norm_sq(0, k1) * basis.sine_norm_sq(1, k2);
            alpha[static_cast<std::size_t>(k1) * m2 + (k2 - 1)] = -pair / mass;
        }
    GridField phi(g, 1);
    phi.data = basis.synthesize_mixed(alpha, 1, 0);
    return phi;
}

double example_energy_closed_form(const GridField& u)
{
    const GridField phi = example_phi(u);
    double total = 0.0;
    for (std::size_t i = 0; i < u.nodes(); ++i)
        total += u.at(i, 0) * u.at(i, 0) + u.at(i, 1) * u.at(i, 1) + phi.at(i, 0) * phi.at(i, 0);
    return total * u.grid.cell_volume();
}

GridField nonlocality_field(const Grid& box, double xi1, double xi2, double eps)
{
    if (box.dims() != 2)
        throw InvalidArgument("the nonlocality field is two-dimensional");
    GridField u(box, 2);
    std::vector<double> x(2);
    for (std::size_t i = 0; i < box.count(); ++i) {
        box.coordinates(i, x);
        const bool inside = std::abs(x[0] - 0.5) < eps && std::abs(x[1] - 0.5) < eps;
        u.at(i, 0) = inside ? -xi1 : -xi2;
    }
    return u;
}

NonlocalityReport nonlocality_report(double xi1, double xi2, double eps, double delta,
                                     const std::optional<NonlocalityCrosscheck>& crosscheck)
{
    if (!(eps > 0.0 && eps < 0.5))
        throw InvalidArgument("eps must lie in (0, 1/2)");
    if (!(delta > 0.0 && delta < 0.5 - eps))
        throw InvalidArgument("delta must lie in (0, 1/2 - eps)");
    if (!std::isfinite(xi1) || !std::isfinite(xi2))
        throw InvalidArgument("xi1 and xi2 must be finite");
    NonlocalityReport rep;
    rep.xi1 = xi1;
    rep.xi2 = xi2;
    rep.eps = eps;
    rep.delta = delta;
    const double e2 = eps * eps, jump = (xi1 - xi2) * (xi1 - xi2);
    rep.outer = (1.0 - 4.0 * e2) * xi2 * xi2;
    rep.full = 4.0 * e2 * xi1 * xi1 + (1.0 - 4.0 * e2) * xi2 * xi2 + 4.0 * e2 * (1.0 - 2.0 * eps) * jump;
    rep.inner = 4.0 * e2 * xi1 * xi1 + 4.0 * delta * (delta + 2.0 * eps) * xi2 * xi2 +
                4.0 * e2 * delta * jump / (eps + delta);
    rep.lhs = 4.0 * e2 * (1.0 - 2.0 * eps) * jump;
    rep.rhs = 4.0 * delta * (delta + 2.0 * eps) * xi2 * xi2 + 4.0 * e2 * delta * jump / (eps + delta);
    rep.violated = rep.lhs > rep.rhs;

    if (crosscheck) {
        const auto& cc = *crosscheck;
        NonlocalityNumeric num;
        const double a = 0.5 - eps, b = 0.5 + eps;

        num.full_cells = aligned_cells(1.0, {a, b}, cc.points_per_unit);
        num.full = numeric_energy(Grid::box({0.0, 0.0}, {1.0, 1.0}, {num.full_cells, num.full_cells}), xi1, xi2,
                                  eps, cc);

        const double lo = a - delta, len = 2.0 * (eps + delta);
        num.inner_cells = aligned_cells(len, {delta, delta + 2.0 * eps}, cc.points_per_unit);
        num.inner = numeric_energy(Grid::box({lo, lo}, {lo + len, lo + len}, {num.inner_cells, num.inner_cells}), xi1,
                                   xi2, eps, cc);

        // Omega minus the closed inner square as four boxes; u_0 is constant and
        // divergence-free on each, where the energy is additive.
        auto cells = [&](double l) { return std::max(2, static_cast<int>(std::ceil(cc.points_per_unit * l - 1e-9))); };
        const std::vector<std::pair<std::vector<double>, std::vector<double>>> parts = {
            {{0.0, 0.0}, {1.0, a}}, {{0.0, b}, {1.0, 1.0}}, {{0.0, a}, {a, b}}, {{b, a}, {1.0, b}}};
        num.outer = 0.0;
        for (const auto& [lower, upper] : parts) {
            const Grid box = Grid::box(lower, upper, {cells(upper[0] - lower[0]), cells(upper[1] - lower[1])});
            num.outer += numeric_energy(box, xi1, xi2, eps, cc);
        }

        // A vanishing closed form (xi2 = 0) is compared absolutely.
        num.outer_rel_error = rep.outer == 0.0 ? std::abs(num.outer) : rel_error(num.outer, rep.outer);
        num.full_rel_error = rel_error(num.full, rep.full);
        num.inner_rel_error = rel_error(num.inner, rep.inner);
        rep.numeric = num;
    }
    return rep;
}

ConstantCoefficientReport constant_coefficient_check(const GridField& u, const CoefficientSet& a, const Integrand& f,
                                                     const RelaxationSpec& spec)
{
    if (!a.is_constant(1e-12))
        throw InvalidArgument("coefficients are not constant in y");
    ConstantCoefficientReport rep;
    RelaxationSpec s = spec;
    s.n = 1;
    const EnergyReport r1 = relaxed_energy(u, a, f, s);
    s.n = 4;
    const EnergyReport r4 = relaxed_energy(u, a, f, s);
    rep.value_n1 = r1.value;
    rep.value_n4 = r4.value;
    rep.n_independent = std::abs(r1.value - r4.value) <= spec.tol_energy * std::max(1.0, std::abs(r1.value)) ||
                        (std::isinf(r1.value) && std::isinf(r4.value));
    rep.corrector_mean_max = std::max(r1.w_mean_max, r4.w_mean_max);

    const TwoScaleField zero(u.grid, a.ygrid, a.d);
    rep.u_free = constraint_residuals(u, zero, a).worst() <= spec.tol_feas;
    rep.jensen_value = integrate_integrand(u, f);
    rep.jensen_gap = std::abs(r1.value - rep.jensen_value);
    rep.passed = rep.n_independent && rep.corrector_mean_max <= 10.0 * spec.tol_feas &&
                 (!rep.u_free || rep.jensen_gap <= 1e-6 * std::max(1.0, std::abs(rep.jensen_value)));
    return rep;
}

}  // namespace homoglab
