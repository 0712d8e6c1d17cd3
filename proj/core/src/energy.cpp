#include "homoglab/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "homoglab/parallel.hpp"

namespace homoglab {

namespace {

constexpr double infinity = std::numeric_limits<double>::infinity();

// int int f(u + w) over Omega x Q.
double two_scale_energy(const GridField& u, const TwoScaleField& w, const Integrand& f)
{
    const int d = w.components;
    const std::size_t nx = w.xgrid.count(), ny = w.ygrid.count();
    std::vector<double> partial(nx, 0.0);
    parallel_for(nx, [&](std::size_t begin, std::size_t end) {
        std::vector<double> v(d);
        for (std::size_t x = begin; x < end; ++x) {
            const double* s = w.slice(x);
            double acc = 0.0;
            for (std::size_t y = 0; y < ny; ++y) {
                for (int c = 0; c < d; ++c)
                    v[c] = u.at(x, c) + s[y * d + c];
                acc += f(v);
            }
            partial[x] = acc;
        }
    });
    double total = 0.0;
    for (double p : partial)
        total += p;
    return total * w.xgrid.cell_volume() * w.ygrid.cell_volume();
}

TwoScaleField energy_gradient(const GridField& u, const TwoScaleField& w, const Integrand& f)
{
    TwoScaleField g(w.xgrid, w.ygrid, w.components);
    const int d = w.components;
    const std::size_t ny = w.ygrid.count();
    parallel_for(w.xgrid.count(), [&](std::size_t begin, std::size_t end) {
        std::vector<double> v(d), gv(d);
        for (std::size_t x = begin; x < end; ++x) {
            const double* s = w.slice(x);
            double* gs = g.slice(x);
            for (std::size_t y = 0; y < ny; ++y) {
                for (int c = 0; c < d; ++c)
                    v[c] = u.at(x, c) + s[y * d + c];
                f.gradient(v, gv);
                for (int c = 0; c < d; ++c)
                    gs[y * d + c] = gv[c];
            }
        }
    });
    return g;
}

double max_node_norm(const TwoScaleField& w)
{
    double m = 0.0;
    const int d = w.components;
    for (std::size_t i = 0; i < w.data.size(); i += d) {
        double s = 0.0;
        for (int c = 0; c < d; ++c)
            s += w.data[i + c] * w.data[i + c];
        m = std::max(m, s);
    }
    return std::sqrt(m);
}

double max_node_norm(const GridField& u)
{
    double m = 0.0;
    for (std::size_t i = 0; i < u.nodes(); ++i)
        m = std::max(m, norm2(u.node_values(i)));
    return m;
}

void fill_diagnostics(EnergyReport& rep, const GridField& u, const TwoScaleField& w, const CoefficientSet& a)
{
    rep.residuals = constraint_residuals(u, w, a);
    rep.w_l2 = l2_norm(w);
    rep.w_max = max_node_norm(w);
    rep.w_mean_max = rep.residuals.mean_residual;
}

EnergyReport infeasible_report(const RelaxationSpec& spec, int cg)
{
    EnergyReport rep;
    rep.value = infinity;
    rep.feasible = false;
    rep.certified = true;
    rep.label = "truncated relaxed energy";
    rep.r = spec.r;
    rep.n = spec.n;
    rep.projection_iterations = cg;
    return rep;
}

}  // namespace

double integrate_integrand(const GridField& u, const Integrand& f)
{
    double total = 0.0;
    for (std::size_t i = 0; i < u.nodes(); ++i)
        total += f(u.node_values(i));
    return total * u.grid.cell_volume();
}

EnergyReport relaxed_energy(const GridField& u, const CoefficientSet& a, const Integrand& f,
                            const RelaxationSpec& spec)
{
    if (!f.convex)
        throw InvalidArgument("integrand '" + f.name +
                              "' is not convex; its relaxation cannot be certified and is not supported");
    if (!f.gradient)
        throw InvalidArgument("integrand '" + f.name + "' has no gradient");
    if (!(spec.r >= 0.0) || !std::isfinite(spec.r))
        throw InvalidArgument("truncation radius must be finite and nonnegative");
    if (spec.n < 1)
        throw InvalidArgument("dilation must be a positive integer");
    if (!(spec.tol_feas > 0.0) || !(spec.tol_energy > 0.0))
        throw InvalidArgument("tolerances must be positive");
    if (u.grid.is_periodic())
        throw InvalidArgument("relaxed energy acts on fields over a box domain");
    if (u.components != a.d || u.grid.dims() != a.N)
        throw ShapeError("field does not match the coefficient dimensions");

    const CoefficientSet an = a.with_dilation(spec.n);
    (void)assemble(an);  // ellipticity

    ProjectionOptions popt;
    popt.tol = spec.tol_feas;
    popt.max_iter = spec.max_projection_iter;
    ProjectionStats st;
    int cg = 0;

    // Least-norm corrector: w_min is orthogonal to the kernel of the
    // constraints, so the admissible ball is centered there.
    const TwoScaleField zero(u.grid, an.ygrid, an.d);
    TwoScaleField wmin;
    try {
        wmin = affine_feasibility_project(zero, u, an, popt, &st);
    } catch (const InfeasibleConstraint&) {
        return infeasible_report(spec, st.iterations);
    }
    cg += st.iterations;
    const double wmin_norm = l2_norm(wmin);
    if (wmin_norm > spec.r * (1.0 + 1e-9) + spec.tol_feas)
        return infeasible_report(spec, cg);

    EnergyReport rep;
    rep.feasible = true;
    rep.label = "truncated relaxed energy";
    rep.r = spec.r;
    rep.n = spec.n;

    if (f.quadratic_coefficient > 0.0) {
        // mean_y w = 0 makes int int |u + w|^2 = int |u|^2 + int int |w|^2.
        rep.value = two_scale_energy(u, wmin, f);
        rep.certified = true;
        rep.projection_iterations = cg;
        fill_diagnostics(rep, u, wmin, an);
        rep.corrector = std::move(wmin);
        return rep;
    }

    const double rho = std::sqrt(std::max(spec.r * spec.r - wmin_norm * wmin_norm, 0.0));
    const GridField zero_u(u.grid, u.components);
    ProjectionOptions kopt = popt;
    kopt.tol = 0.1 * spec.tol_feas;

    TwoScaleField w = wmin;
    double energy = two_scale_energy(u, w, f);
    double step = 1.0 / std::max(f.gradient_lipschitz(max_node_norm(u) + max_node_norm(w)), 1e-300);
    const double min_step = step * 1e-12;
    bool converged = false;
    int it = 0;
    while (it < spec.max_outer_iter) {
        ++it;
        TwoScaleField g = energy_gradient(u, w, f);
        // gradient restricted to the kernel of the constraints
        TwoScaleField dir = affine_feasibility_project(g, zero_u, an, kopt, &st);
        cg += st.iterations;
        if (l2_norm(dir) <= spec.tol_energy) {
            converged = true;
            break;
        }
        bool accepted = false;
        while (step >= min_step) {
            TwoScaleField z = w;
            for (std::size_t i = 0; i < z.data.size(); ++i)
                z.data[i] -= step * dir.data[i];
            // projection onto the ball inside the affine set
            double off = 0.0;
            for (std::size_t i = 0; i < z.data.size(); ++i) {
                const double t = z.data[i] - wmin.data[i];
                off += t * t;
            }
            off = std::sqrt(off * z.xgrid.cell_volume() * z.ygrid.cell_volume());
            if (off > rho)
                for (std::size_t i = 0; i < z.data.size(); ++i)
                    z.data[i] = wmin.data[i] + (z.data[i] - wmin.data[i]) * (rho / off);
            const double e = two_scale_energy(u, z, f);
            if (e <= energy) {
                const double drop = energy - e;
                w = std::move(z);
                energy = e;
                accepted = true;
                if (drop <= spec.tol_energy * std::max(1.0, energy))
                    converged = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted)
            converged = true;  // no descent at any admissible step
        if (converged)
            break;
    }

    // remove the drift accumulated from inexact kernel projections
    try {
        w = affine_feasibility_project(w, u, an, popt, &st);
        cg += st.iterations;
    } catch (const InfeasibleConstraint&) {
        return infeasible_report(spec, cg);
    }

    rep.value = two_scale_energy(u, w, f);
    rep.certified = converged;
    rep.iterations = it;
    rep.projection_iterations = cg;
    fill_diagnostics(rep, u, w, an);
    rep.corrector = std::move(w);
    if (!converged)
        throw EnergyNonConvergence("projected gradient did not converge in " + std::to_string(it) + " iterations",
                                   std::move(rep));
    return rep;
}

EnergyReport homogenized_estimate(const GridField& u, const CoefficientSet& a, const Integrand& f,
                                  const RelaxationSpec& spec)
{
    const std::vector<double> rs = spec.r_sweep.empty() ? std::vector<double>{spec.r} : spec.r_sweep;
    const std::vector<int> ns = spec.n_sweep.empty() ? std::vector<int>{spec.n} : spec.n_sweep;
    for (double r : rs)
        if (!(r > 0.0))
            throw InvalidArgument("sweep radii must be positive");

    EnergyReport best;
    best.value = infinity;
    std::vector<EnergyEntry> table;
    int outer = 0, cg = 0;
    bool certified = true;
    for (double r : rs)
        for (int n : ns) {
            RelaxationSpec s = spec;
            s.r = r;
            s.n = n;
            EnergyReport rep;
            try {
                rep = relaxed_energy(u, a, f, s);
            } catch (const EnergyNonConvergence& e) {
                rep = e.report();
            }
            certified = certified && rep.certified;
            outer += rep.iterations;
            cg += rep.projection_iterations;
            table.push_back({r, n, rep.value, rep.feasible, rep.iterations + rep.projection_iterations});
            if (rep.value < best.value || (!best.feasible && rep.feasible))
                best = std::move(rep);
        }

    // nested admissible sets: the value cannot increase with r
    bool monotone = true;
    std::map<int, std::vector<const EnergyEntry*>> by_n;
    for (const auto& e : table)
        by_n[e.n].push_back(&e);
    for (auto& [n, list] : by_n) {
        std::stable_sort(list.begin(), list.end(), [](auto* x, auto* y) { return x->r < y->r; });
        for (std::size_t i = 1; i < list.size(); ++i) {
            const double prev = list[i - 1]->value, cur = list[i]->value;
            if (std::isinf(prev))
                continue;
            if (cur > prev + spec.tol_energy * std::max(1.0, std::abs(prev)))
                monotone = false;
        }
    }

    best.table = std::move(table);
    best.monotone_in_r = monotone;
    best.label = "upper estimate of F_A";
    best.certified = certified;
    best.iterations = outer;
    best.projection_iterations = cg;
    return best;
}

}  // namespace homoglab
