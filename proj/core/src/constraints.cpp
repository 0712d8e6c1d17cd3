#include "homoglab/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "constraint_system.hpp"
#include "homoglab/errors.hpp"
#include "homoglab/parallel.hpp"

namespace homoglab {

double ResidualReport::worst() const
{
    return std::max({x_residual, y_residual_max, mean_residual});
}

ResidualReport constraint_residuals(const GridField& u, const TwoScaleField& w, const CoefficientSet& a)
{
    detail::ConstraintSystem sys(w.xgrid, w.ygrid, a);
    std::vector<double> per_slice;
    const auto r = sys.residual(w, &u, &per_slice);
    ResidualReport rep;
    rep.x_residual = sys.norm_b(r);
    double sq = 0.0;
    for (double v : per_slice) {
        rep.y_residual_max = std::max(rep.y_residual_max, v);
        sq += v * v;
    }
    rep.y_residual_l2 = std::sqrt(sq * w.xgrid.cell_volume());
    for (double v : r.a)
        rep.mean_residual = std::max(rep.mean_residual, std::abs(v));
    return rep;
}

TwoScaleField affine_feasibility_project(const TwoScaleField& w, const GridField& u, const CoefficientSet& a,
                                         const ProjectionOptions& options, ProjectionStats* stats)
{
    if (!(options.tol > 0.0))
        throw InvalidArgument("projection tolerance must be positive");
    detail::ConstraintSystem sys(w.xgrid, w.ygrid, a, true);
    using Vec = detail::ConstraintVector;

    const Vec rhs = sys.residual(w, &u);
    const double r0 = sys.norm(rhs);
    const int max_iter = options.max_iter > 0
                             ? options.max_iter
                             : static_cast<int>(10.0 * std::sqrt(static_cast<double>(w.data.size())));
    const double target = 0.1 * options.tol;

    // Preconditioned CG on (B B^*) y = r(w); the result is w - B^* y.
    Vec y = sys.zero();
    Vec r = rhs;
    Vec z = sys.precondition(r);
    Vec p = z;
    double rz = sys.inner(r, z);
    double res = r0;
    double best = res;
    double best_at_window = best;
    const int window = 200;
    int it = 0;
    while (res > target && it < max_iter) {
        const Vec ap = sys.normal(p);
        const double pap = sys.inner(p, ap);
        if (!(pap > 0.0))
            break;
        const double alpha = rz / pap;
        detail::ConstraintSystem::axpy(alpha, p, y);
        detail::ConstraintSystem::axpy(-alpha, ap, r);
        z = sys.precondition(r);
        const double rz_new = sys.inner(r, z);
        detail::ConstraintSystem::scale_add(z, rz_new / rz, p);
        rz = rz_new;
        res = sys.norm(r);
        ++it;
        best = std::min(best, res);
        if (it % window == 0) {
            if (best > 0.9 * best_at_window)
                break;
            best_at_window = best;
        }
    }

    const TwoScaleField correction = sys.adjoint(y);
    TwoScaleField out = w;
    for (std::size_t i = 0; i < out.data.size(); ++i)
        out.data[i] -= correction.data[i];

    const double final_res = sys.norm(sys.residual(out, &u));
    if (stats) {
        stats->iterations = it;
        stats->initial_residual = r0;
        stats->final_residual = final_res;
    }
    if (final_res > 10.0 * options.tol)
        throw InfeasibleConstraint("constraint residual stalled at " + std::to_string(final_res) + " after " +
                                   std::to_string(it) + " iterations");
    return out;
}

TwoScaleField coupled_project(const TwoScaleField& v, const CoefficientSet& a)
{
    const AssembledOperator op = assemble(a);
    if (!v.ygrid.same_shape(a.ygrid))
        throw ShapeError("coefficients and field use different y-grids");
    if (v.components != a.d)
        throw ShapeError("field components must equal d");
    if (v.xgrid.dims() != a.N)
        throw ShapeError("macroscopic grid dimension must equal N");
    const int d = a.d, l = a.l;
    const std::size_t nx = v.xgrid.count(), ny = v.ygrid.count();
    const auto& sizes = v.ygrid.sizes();
    detail::PeriodicSymbols sym(sizes);
    SineBasis sine(v.xgrid);

    // Flux R = A v; keep its y-fluctuation projected in y, collect the y-mean.
    TwoScaleField flux(v.xgrid, v.ygrid, d);
    std::vector<double> mean(nx * d, 0.0);
    parallel_for(nx, [&](std::size_t begin, std::size_t end) {
        detail::RealFft fft(sizes, d);
        std::vector<detail::cplx> spec(fft.spectral_size()), scratch(fft.spectral_size());
        for (std::size_t x = begin; x < end; ++x) {
            const double* vs = v.slice(x);
            double* fs = flux.slice(x);
            for (std::size_t y = 0; y < ny; ++y) {
                const double* m = op.at(y);
                for (int k = 0; k < d; ++k) {
                    double acc = 0.0;
                    for (int c = 0; c < d; ++c)
                        acc += m[k * d + c] * vs[y * d + c];
                    fs[y * d + k] = acc;
                    mean[x * d + k] += acc;
                }
            }
            for (int k = 0; k < d; ++k)
                mean[x * d + k] /= static_cast<double>(ny);
            fft.forward(fs, spec.data());
            detail::project_divergence_free(sym, spec.data(), l);
            fft.backward(spec.data(), fs, scratch.data());
            for (std::size_t i = 0; i < ny * d; ++i)
                fs[i] /= static_cast<double>(ny);
        }
    });

    // Mean flux: remove the part seen by the weak x-divergence.
    const auto coef = sine.weak_divergence(mean, l);
    const auto removed = sine.weak_divergence_adjoint(coef, l);
    for (std::size_t i = 0; i < mean.size(); ++i)
        mean[i] -= removed[i];

    TwoScaleField out(v.xgrid, v.ygrid, d);
    parallel_for(nx, [&](std::size_t begin, std::size_t end) {
        std::vector<double> s(d);
        for (std::size_t x = begin; x < end; ++x) {
            const double* fs = flux.slice(x);
            double* os = out.slice(x);
            for (std::size_t y = 0; y < ny; ++y) {
                for (int k = 0; k < d; ++k)
                    s[k] = fs[y * d + k] + mean[x * d + k];
                const double* inv = op.inverse_at(y);
                for (int c = 0; c < d; ++c) {
                    double acc = 0.0;
                    for (int k = 0; k < d; ++k)
                        acc += inv[c * d + k] * s[k];
                    os[y * d + c] = acc;
                }
            }
        }
    });
    return out;
}

}  // namespace homoglab
