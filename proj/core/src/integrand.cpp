#include "homoglab/integrand.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "homoglab/errors.hpp"

namespace homoglab {

namespace {

double sq_norm(std::span<const double> v)
{
    double s = 0.0;
    for (double x : v)
        s += x * x;
    return s;
}

}  // namespace

Integrand quadratic(double alpha)
{
    if (!(alpha > 0.0))
        throw InvalidArgument("quadratic integrand needs alpha > 0");
    Integrand f;
    f.name = "quadratic";
    f.p = 2.0;
    f.C = alpha;
    f.convex = true;
    f.quadratic_coefficient = alpha;
    f.value = [alpha](std::span<const double> v) { return alpha * sq_norm(v); };
    f.gradient = [alpha](std::span<const double> v, std::span<double> g) {
        for (std::size_t i = 0; i < v.size(); ++i)
            g[i] = 2.0 * alpha * v[i];
    };
    f.gradient_lipschitz = [alpha](double) { return 2.0 * alpha; };
    return f;
}

Integrand regularized_power(double p)
{
    if (!(p >= 1.0))
        throw InvalidArgument("regularized power integrand needs p >= 1");
    Integrand f;
    f.name = "regularized_power";
    f.p = p;
    // (1 + s^2)^{p/2} <= 2^{p/2} max(1, s^p)
    f.C = std::pow(2.0, p / 2.0);
    f.convex = true;
    f.value = [p](std::span<const double> v) { return std::pow(1.0 + sq_norm(v), p / 2.0) - 1.0; };
    f.gradient = [p](std::span<const double> v, std::span<double> g) {
        const double s = p * std::pow(1.0 + sq_norm(v), p / 2.0 - 1.0);
        for (std::size_t i = 0; i < v.size(); ++i)
            g[i] = s * v[i];
    };
    // Hessian eigenvalues are p t^{p/2-1} and p t^{p/2-2}(1 + (p-1) s^2), t = 1 + s^2.
    f.gradient_lipschitz = [p](double R) {
        const double t = 1.0 + R * R;
        if (p <= 2.0)
            return p;
        return p * std::pow(t, p / 2.0 - 2.0) * (1.0 + (p - 1.0) * R * R);
    };
    return f;
}

Integrand quadratic_quartic(double beta)
{
    if (!(beta >= 0.0))
        throw InvalidArgument("quartic weight must be nonnegative");
    Integrand f;
    f.name = "quadratic_quartic";
    f.p = 4.0;
    f.C = 1.0 + beta;
    f.convex = true;
    f.value = [beta](std::span<const double> v) {
        const double s = sq_norm(v);
        return s + beta * s * s;
    };
    f.gradient = [beta](std::span<const double> v, std::span<double> g) {
        const double s = 2.0 + 4.0 * beta * sq_norm(v);
        for (std::size_t i = 0; i < v.size(); ++i)
            g[i] = s * v[i];
    };
    f.gradient_lipschitz = [beta](double R) { return 2.0 + 12.0 * beta * R * R; };
    return f;
}

Integrand double_well()
{
    Integrand f;
    f.name = "double_well";
    f.p = 4.0;
    f.C = 2.0;
    f.convex = false;
    f.value = [](std::span<const double> v) {
        const double s = sq_norm(v) - 1.0;
        return s * s;
    };
    f.gradient = [](std::span<const double> v, std::span<double> g) {
        const double s = 4.0 * (sq_norm(v) - 1.0);
        for (std::size_t i = 0; i < v.size(); ++i)
            g[i] = s * v[i];
    };
    f.gradient_lipschitz = [](double R) { return 4.0 + 12.0 * R * R; };
    return f;
}

double derived_value(const Integrand& f, const AssembledOperator& op, std::size_t y, std::span<const double> xi)
{
    if (static_cast<int>(xi.size()) != op.d)
        throw ShapeError("derived integrand: argument has the wrong length");
    if (y >= op.ygrid.count())
        throw InvalidArgument("derived integrand: node out of range");
    const double* inv = op.inverse_at(y);
    std::vector<double> v(op.d, 0.0);
    for (int r = 0; r < op.d; ++r)
        for (int c = 0; c < op.d; ++c)
            v[r] += inv[r * op.d + c] * xi[c];
    return f(v);
}

IntegrandCheck check_integrand(const Integrand& f, int d, int count, std::uint64_t seed, double scale, double tol)
{
    if (d < 1 || count < 1)
        throw InvalidArgument("integrand check needs d >= 1 and count >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> radius(0.0, scale);
    IntegrandCheck out;
    out.min_value = INFINITY;
    std::vector<double> v(d), g(d), vp(d), vm(d);
    for (int s = 0; s < count; ++s) {
        double n = 0.0;
        for (double& x : v) {
            x = normal(rng);
            n += x * x;
        }
        const double r = radius(rng) / std::max(std::sqrt(n), 1e-300);
        for (double& x : v)
            x *= r;
        const double fv = f(v);
        out.min_value = std::min(out.min_value, fv);
        out.max_growth_ratio = std::max(out.max_growth_ratio, fv / (f.C * (1.0 + std::pow(std::sqrt(sq_norm(v)), f.p))));
        if (!f.gradient)
            continue;
        f.gradient(v, g);
        double err = 0.0, gn = 0.0;
        for (int i = 0; i < d; ++i) {
            const double step = 1e-5 * std::max(1.0, std::abs(v[i]));
            vp = v;
            vm = v;
            vp[i] += step;
            vm[i] -= step;
            const double fd = (f(vp) - f(vm)) / (2.0 * step);
            err = std::max(err, std::abs(fd - g[i]));
            gn = std::max(gn, std::abs(g[i]));
        }
        out.max_relative_error = std::max(out.max_relative_error, err / std::max(1.0, gn));
    }
    out.passed = out.min_value >= 0.0 && out.max_growth_ratio <= 1.0 && out.max_relative_error <= tol;
    return out;
}

}  // namespace homoglab
