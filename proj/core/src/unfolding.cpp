#include "homoglab/unfolding.hpp"

#include <cmath>
#include <string>

#include "homoglab/errors.hpp"
#include "homoglab/parallel.hpp"
#include "homoglab/sine_basis.hpp"

namespace homoglab {

namespace {

bool near_integer(double v, double tol = 1e-9)
{
    return std::abs(v - std::round(v)) <= tol * std::max(1.0, std::abs(v));
}

// Reduce t into the periodic cell [-1/2, 1/2).
double wrap_cell(double t)
{
    return t - std::floor(t + 0.5);
}

// Per-axis trigonometric interpolation weights for a point y.
std::vector<std::vector<double>> axis_weights(const Grid& ygrid, std::span<const double> y)
{
    std::vector<std::vector<double>> w(ygrid.dims());
    for (int a = 0; a < ygrid.dims(); ++a)
        w[a] = trig_interpolation_weights(wrap_cell(y[a]), ygrid.size(a));
    return w;
}

// sum over nodes of prod_a w_a[j_a] * samples[node][c], contracting the last axis first.
void contract(const Grid& ygrid, const double* samples, int comps, const std::vector<std::vector<double>>& w,
              std::span<double> out)
{
    const int n = ygrid.dims();
    std::vector<double> cur(samples, samples + ygrid.count() * comps), next;
    std::size_t outer = ygrid.count();
    for (int a = n - 1; a >= 0; --a) {
        const int m = ygrid.size(a);
        outer /= m;
        next.assign(outer * comps, 0.0);
        for (std::size_t o = 0; o < outer; ++o)
            for (int j = 0; j < m; ++j) {
                const double wj = w[a][j];
                const double* src = cur.data() + (o * m + j) * comps;
                double* dst = next.data() + o * comps;
                for (int c = 0; c < comps; ++c)
                    dst[c] += wj * src[c];
            }
        cur.swap(next);
    }
    for (int c = 0; c < comps; ++c)
        out[c] = cur[c];
}

}  // namespace

void interpolate_periodic(const Grid& ygrid, const double* samples, int comps, std::span<const double> y,
                          std::span<double> out)
{
    if (!ygrid.is_periodic())
        throw InvalidArgument("interpolation needs a periodic grid");
    contract(ygrid, samples, comps, axis_weights(ygrid, y), out);
}

std::vector<int> unfolding_cell_sizes(const Grid& xgrid, double epsilon)
{
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        throw InvalidArgument("epsilon must be positive");
    std::vector<int> m(xgrid.dims());
    for (int a = 0; a < xgrid.dims(); ++a) {
        const double cells = epsilon / xgrid.spacing(a);
        if (!near_integer(cells) || std::lround(cells) < 2 || std::lround(cells) % 2 != 0)
            throw InvalidArgument("epsilon " + std::to_string(epsilon) + " is not an even multiple of the grid spacing on axis " +
                                  std::to_string(a));
        if (!near_integer(xgrid.lower()[a] / epsilon) || !near_integer(xgrid.upper()[a] / epsilon))
            throw InvalidArgument("the domain is not a union of epsilon-cells on axis " + std::to_string(a));
        m[a] = static_cast<int>(std::lround(cells));
    }
    return m;
}

std::vector<double> unfolding_point(std::span<const double> x, std::span<const double> y, double epsilon)
{
    if (x.size() != y.size())
        throw ShapeError("x and y must have the same dimension");
    if (!(epsilon > 0.0))
        throw InvalidArgument("epsilon must be positive");
    std::vector<double> z(x.size());
    for (std::size_t a = 0; a < x.size(); ++a)
        z[a] = epsilon * std::floor(x[a] / epsilon) + epsilon * (y[a] - std::floor(y[a]));
    return z;
}

TwoScaleField unfold(const GridField& u, const UnfoldingParams& params)
{
    if (u.grid.is_periodic())
        throw InvalidArgument("unfolding acts on fields over a box domain");
    const std::vector<int> m = unfolding_cell_sizes(u.grid, params.epsilon);
    const int n = u.grid.dims();
    const Grid ygrid = Grid::periodic(m);
    TwoScaleField out(u.grid, ygrid, u.components);
    const int d = u.components;
    parallel_for(u.nodes(), [&](std::size_t begin, std::size_t end) {
        std::vector<int> xi(n), yj(n), zi(n);
        for (std::size_t x = begin; x < end; ++x) {
            u.grid.unflat(x, xi);
            double* dst = out.slice(x);
            for (std::size_t y = 0; y < ygrid.count(); ++y) {
                ygrid.unflat(y, yj);
                // cell anchor plus local offset of frac(y)
                for (int a = 0; a < n; ++a) {
                    const int local = 2 * yj[a] >= m[a] ? yj[a] - m[a] / 2 : yj[a] + m[a] / 2;
                    zi[a] = (xi[a] / m[a]) * m[a] + local;
                }
                const std::size_t z = u.grid.flat(zi);
                for (int c = 0; c < d; ++c)
                    dst[y * d + c] = u.at(z, c);
            }
        }
    });
    return out;
}

std::vector<double> unfold_defect(const GridField& u, std::span<const double> schedule)
{
    std::vector<double> out;
    out.reserve(schedule.size());
    for (double eps : schedule) {
        const TwoScaleField t = unfold(u, {eps});
        const std::size_t ny = t.ygrid.count();
        double sq = 0.0;
        for (std::size_t x = 0; x < u.nodes(); ++x) {
            const double* s = t.slice(x);
            for (std::size_t y = 0; y < ny; ++y)
                for (int c = 0; c < u.components; ++c) {
                    const double diff = u.at(x, c) - s[y * u.components + c];
                    sq += diff * diff;
                }
        }
        out.push_back(std::sqrt(sq * u.grid.cell_volume() * t.ygrid.cell_volume()));
    }
    return out;
}

namespace {

std::optional<double> limit_pairing(const TwoScaleField* limit, const TwoScaleTest& phi)
{
    if (!limit)
        return std::nullopt;
    const int n = limit->xgrid.dims();
    const int d = limit->components;
    std::vector<double> x(n), y(n), val(d);
    double total = 0.0;
    for (std::size_t xi = 0; xi < limit->xgrid.count(); ++xi) {
        limit->xgrid.coordinates(xi, x);
        for (std::size_t yi = 0; yi < limit->ygrid.count(); ++yi) {
            limit->ygrid.coordinates(yi, y);
            phi(x, y, val);
            for (int c = 0; c < d; ++c)
                total += limit->at(xi, yi, c) * val[c];
        }
    }
    return total * limit->xgrid.cell_volume() * limit->ygrid.cell_volume();
}

}  // namespace

TwoScalePairing two_scale_pairing(const GridField& u_eps, const TwoScaleTest& phi, double epsilon,
                                  const TwoScaleField* limit)
{
    if (!(epsilon > 0.0))
        throw InvalidArgument("epsilon must be positive");
    if (limit && limit->components != u_eps.components)
        throw ShapeError("limit field has a different number of components");
    const int n = u_eps.grid.dims();
    const int d = u_eps.components;
    std::vector<double> x(n), y(n), val(d);
    double total = 0.0;
    for (std::size_t i = 0; i < u_eps.nodes(); ++i) {
        u_eps.grid.coordinates(i, x);
        for (int a = 0; a < n; ++a)
            y[a] = wrap_cell(x[a] / epsilon);
        phi(x, y, val);
        for (int c = 0; c < d; ++c)
            total += u_eps.at(i, c) * val[c];
    }
    TwoScalePairing p;
    p.value = total * u_eps.grid.cell_volume();
    p.epsilon = epsilon;
    p.limit_estimate = limit_pairing(limit, phi);
    return p;
}

TwoScalePairing two_scale_pairing(const GridField& u_eps, const TwoScaleField& phi, double epsilon,
                                  const TwoScaleField* limit)
{
    if (!phi.xgrid.same_shape(u_eps.grid))
        throw ShapeError("test field must share the x-grid of u_eps");
    if (phi.components != u_eps.components)
        throw ShapeError("test field has a different number of components");
    const Grid& xg = u_eps.grid;
    TwoScaleTest sampled = [&](std::span<const double> x, std::span<const double> y, std::span<double> out) {
        // locate the x-node (x is always a node of the shared grid here)
        std::vector<int> idx(xg.dims());
        for (int a = 0; a < xg.dims(); ++a)
            idx[a] = std::clamp(static_cast<int>(std::floor((x[a] - xg.lower()[a]) / xg.spacing(a))), 0, xg.size(a) - 1);
        interpolate_periodic(phi.ygrid, phi.slice(xg.flat(idx)), phi.components, y, out);
    };
    TwoScalePairing p = two_scale_pairing(u_eps, sampled, epsilon, nullptr);
    if (limit) {
        check_same_shape(*limit, phi, "two_scale_pairing");
        p.limit_estimate = inner(*limit, phi);
    }
    return p;
}

GridField oscillating_sequence(const GridField& u, const TwoScaleField& w, int n, double epsilon)
{
    if (n < 1)
        throw InvalidArgument("dilation must be a positive integer");
    if (!(epsilon > 0.0))
        throw InvalidArgument("epsilon must be positive");
    if (!w.xgrid.same_shape(u.grid) || w.components != u.components)
        throw ShapeError("corrector and macroscopic field do not match");
    GridField out = u;
    const int dims = u.grid.dims();
    const int d = u.components;
    parallel_for(u.nodes(), [&](std::size_t begin, std::size_t end) {
        std::vector<double> x(dims), y(dims), val(d);
        for (std::size_t i = begin; i < end; ++i) {
            u.grid.coordinates(i, x);
            for (int a = 0; a < dims; ++a)
                y[a] = x[a] / (n * epsilon);
            interpolate_periodic(w.ygrid, w.slice(i), d, y, val);
            for (int c = 0; c < d; ++c)
                out.at(i, c) += val[c];
        }
    });
    return out;
}

double oscillating_residual(const GridField& u_eps, const CoefficientSet& a, double epsilon)
{
    if (!(epsilon > 0.0))
        throw InvalidArgument("epsilon must be positive");
    if (u_eps.components != a.d || u_eps.grid.dims() != a.N)
        throw ShapeError("field does not match the coefficient dimensions");
    const int dims = a.N, rows = a.N * a.l, d = a.d;
    std::vector<double> flux(u_eps.nodes() * rows, 0.0);
    parallel_for(u_eps.nodes(), [&](std::size_t begin, std::size_t end) {
        std::vector<double> x(dims), y(dims), mat(static_cast<std::size_t>(rows) * d);
        for (std::size_t i = begin; i < end; ++i) {
            u_eps.grid.coordinates(i, x);
            for (int k = 0; k < dims; ++k)
                y[k] = x[k] / epsilon;
            interpolate_periodic(a.ygrid, a.samples.data(), static_cast<int>(a.block()), y, mat);
            for (int r = 0; r < rows; ++r) {
                double acc = 0.0;
                for (int c = 0; c < d; ++c)
                    acc += mat[r * d + c] * u_eps.at(i, c);
                flux[i * rows + r] = acc;
            }
        }
    });
    const SineBasis basis(u_eps.grid);
    return norm2(basis.weak_divergence(flux, a.l));
}

GridField truncate(const GridField& u, double k)
{
    if (!(k > 0.0))
        throw InvalidArgument("truncation level must be positive");
    GridField out = u;
    for (std::size_t i = 0; i < u.nodes(); ++i) {
        auto v = out.node_values(i);
        const double mag = norm2(v);
        if (mag > k)
            for (double& c : v)
                c *= k / mag;
    }
    return out;
}

}  // namespace homoglab
