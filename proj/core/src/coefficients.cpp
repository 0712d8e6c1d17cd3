#include "homoglab/coefficients.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "homoglab/errors.hpp"

namespace homoglab {

namespace {

using std::numbers::pi;

// Applies an m x m matrix along one axis of an array shaped sizes x block.
std::vector<double> apply_axis(const std::vector<double>& in, const std::vector<int>& sizes, std::size_t block, int axis,
                               const std::vector<double>& mat)
{
    const int m = sizes[axis];
    std::size_t outer = 1, inner = block;
    for (int a = 0; a < axis; ++a)
        outer *= sizes[a];
    for (std::size_t a = axis + 1; a < sizes.size(); ++a)
        inner *= sizes[a];
    std::vector<double> out(in.size(), 0.0);
    for (std::size_t o = 0; o < outer; ++o)
        for (int r = 0; r < m; ++r)
            for (int c = 0; c < m; ++c) {
                const double coef = mat[static_cast<std::size_t>(r) * m + c];
                const double* s = in.data() + (o * m + c) * inner;
                double* d = out.data() + (o * m + r) * inner;
                for (std::size_t i = 0; i < inner; ++i)
                    d[i] += coef * s[i];
            }
    return out;
}

double bump(double r)
{
    return r < 1.0 ? std::exp(-1.0 / (1.0 - r * r)) : 0.0;
}

}  // namespace

CoefficientSet::CoefficientSet(int n, int l_, int d_, Grid y) : N(n), l(l_), d(d_), ygrid(std::move(y))
{
    if (N < 1 || l < 1 || d < 1)
        throw InvalidArgument("coefficient dimensions must be positive");
    if (!ygrid.is_periodic())
        throw InvalidArgument("coefficients live on a periodic grid");
    if (ygrid.dims() != N)
        throw ShapeError("coefficient grid dimension must equal N");
    samples.assign(ygrid.count() * block(), 0.0);
}

CoefficientSet CoefficientSet::with_dilation(int n) const
{
    if (n < 1)
        throw InvalidArgument("dilation must be a positive integer");
    CoefficientSet out = *this;
    out.dilation = n;
    return out;
}

CoefficientSet CoefficientSet::dilated() const
{
    if (dilation < 1)
        throw InvalidArgument("dilation must be a positive integer");
    for (int a = 0; a < ygrid.dims(); ++a)
        if (ygrid.size(a) % dilation != 0)
            throw InvalidArgument("dilation " + std::to_string(dilation) + " does not divide the y-grid size " +
                                  std::to_string(ygrid.size(a)));
    CoefficientSet out = *this;
    out.dilation = 1;
    if (dilation == 1)
        return out;
    const auto& sizes = ygrid.sizes();
    const int n = dilation;
    std::vector<double> cur = samples;
    for (int a = 0; a < ygrid.dims(); ++a) {
        const int m = sizes[a];
        std::vector<double> mat(static_cast<std::size_t>(m) * m, 0.0);
        for (int j = 0; j < m; ++j) {
            if (n % 2 == 1) {
                const int src = static_cast<int>((static_cast<long long>(n) * j + (n - 1) / 2) % m);
                mat[static_cast<std::size_t>(j) * m + src] = 1.0;
            } else {
                const auto w = trig_interpolation_weights(n * ygrid.node(a, j), m);
                std::copy(w.begin(), w.end(), mat.begin() + static_cast<std::ptrdiff_t>(j) * m);
            }
        }
        cur = apply_axis(cur, sizes, block(), a, mat);
    }
    out.samples = std::move(cur);
    return out;
}

bool CoefficientSet::is_constant(double tol) const
{
    const std::size_t b = block();
    for (std::size_t y = 1; y < ygrid.count(); ++y)
        for (std::size_t k = 0; k < b; ++k)
            if (std::abs(samples[y * b + k] - samples[k]) > tol)
                return false;
    return true;
}

double CoefficientSet::max_abs() const
{
    double m = 0.0;
    for (double v : samples)
        m = std::max(m, std::abs(v));
    return m;
}

AssembledOperator assemble(const CoefficientSet& a)
{
    if (a.l * a.N != a.d)
        throw ShapeError("assembly requires l*N = d (l = " + std::to_string(a.l) + ", N = " + std::to_string(a.N) +
                         ", d = " + std::to_string(a.d) + ")");
    const CoefficientSet s = a.dilated();
    const int d = a.d;
    AssembledOperator op;
    op.d = d;
    op.ygrid = s.ygrid;
    op.matrix = s.samples;
    op.inverse.resize(op.matrix.size());
    op.gamma = std::numeric_limits<double>::infinity();
    using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    for (std::size_t y = 0; y < s.ygrid.count(); ++y) {
        Eigen::Map<const Mat> m(op.matrix.data() + y * d * d, d, d);
        for (double v : std::span<const double>(op.matrix.data() + y * d * d, static_cast<std::size_t>(d * d)))
            if (!std::isfinite(v))
                throw InvalidArgument("coefficient samples must be finite");
        const Mat sym = 0.5 * (m + m.transpose());
        Eigen::SelfAdjointEigenSolver<Mat> eig(sym, Eigen::EigenvaluesOnly);
        const double low = eig.eigenvalues().minCoeff();
        op.gamma = std::min(op.gamma, low);
        if (low <= 0.0) {
            throw EllipticityViolation("assembled operator is not elliptic at y-node " + std::to_string(y) +
                                       " (smallest symmetric eigenvalue " + std::to_string(low) + ")");
        }
        Mat inv = m.inverse();
        Eigen::Map<Mat>(op.inverse.data() + y * d * d, d, d) = inv;
        Eigen::JacobiSVD<Mat> svd(inv);
        op.inverse_bound = std::max(op.inverse_bound, svd.singularValues()(0));
    }
    return op;
}

std::vector<double> make_profile(std::span<const double> raw)
{
    if (raw.size() < 2)
        throw InvalidArgument("profile needs at least two samples");
    double mean = 0.0, scale = 0.0;
    for (double v : raw) {
        if (!std::isfinite(v))
            throw InvalidArgument("profile samples must be finite");
        mean += v;
        scale = std::max(scale, std::abs(v));
    }
    mean /= static_cast<double>(raw.size());
    std::vector<double> a(raw.begin(), raw.end());
    double sq = 0.0;
    for (double& v : a) {
        v -= mean;
        sq += v * v;
    }
    const double norm = std::sqrt(sq / static_cast<double>(a.size()));
    if (norm <= 1e-14 * std::max(scale, 1.0))
        throw InvalidArgument("profile is constant (zero variance)");
    double low = 0.0;
    for (double& v : a) {
        v /= norm;
        low = std::min(low, v);
    }
    if (low <= -1.0 + 1e-9)
        throw InvalidArgument("normalized profile has minimum " + std::to_string(low) + " <= -1");
    return a;
}

std::vector<double> sample_profile(const std::function<double(double)>& raw, int m)
{
    std::vector<double> s(m);
    for (int j = 0; j < m; ++j)
        s[j] = raw(-0.5 + (j + 0.5) / m);
    return s;
}

CoefficientSet mollify(const CoefficientSet& a, int k)
{
    if (k < 1)
        throw InvalidArgument("mollification index must be at least 1");
    const Grid& g = a.ygrid;
    const int n = g.dims();
    const std::size_t count = g.count();
    const double radius = 1.0 / k;

    // Kernel weights on periodic offsets (minimum image), unit discrete mass.
    std::vector<std::size_t> offsets;
    std::vector<double> weights;
    std::vector<int> idx(n);
    double mass = 0.0;
    for (std::size_t q = 0; q < count; ++q) {
        g.unflat(q, idx);
        double r2 = 0.0;
        for (int ax = 0; ax < n; ++ax) {
            const int m = g.size(ax);
            const int s = idx[ax] <= m / 2 ? idx[ax] : idx[ax] - m;
            const double dy = static_cast<double>(s) / m;
            r2 += dy * dy;
        }
        const double w = bump(std::sqrt(r2) / radius);
        if (w > 0.0) {
            offsets.push_back(q);
            weights.push_back(w);
            mass += w;
        }
    }
    for (double& w : weights)
        w /= mass;

    const CoefficientSet base = a.dilated();
    CoefficientSet out = base;
    const std::size_t b = a.block();
    std::vector<int> yi(n), oi(n), si(n);
    for (std::size_t y = 0; y < count; ++y) {
        g.unflat(y, yi);
        double* dst = out.samples.data() + y * b;
        std::fill(dst, dst + b, 0.0);
        for (std::size_t t = 0; t < offsets.size(); ++t) {
            g.unflat(offsets[t], oi);
            for (int ax = 0; ax < n; ++ax)
                si[ax] = ((yi[ax] - oi[ax]) % g.size(ax) + g.size(ax)) % g.size(ax);
            const double* src = base.samples.data() + g.flat(si) * b;
            for (std::size_t c = 0; c < b; ++c)
                dst[c] += weights[t] * src[c];
        }
    }
    return out;
}

CoefficientSet identity_rows(const Grid& ygrid)
{
    const int n = ygrid.dims();
    CoefficientSet a(n, 1, n, ygrid);
    for (std::size_t y = 0; y < ygrid.count(); ++y)
        for (int i = 0; i < n; ++i)
            a.value(y, i, 0, i) = 1.0;
    return a;
}

CoefficientSet example51_coefficients(const std::vector<double>& profile, const Grid& ygrid, int dilation)
{
    if (ygrid.dims() != 2)
        throw ShapeError("the example operators are two-dimensional");
    if (static_cast<int>(profile.size()) != ygrid.size(1))
        throw ShapeError("profile length must equal the y_2 grid size");
    CoefficientSet a(2, 1, 2, ygrid);
    std::vector<int> idx(2);
    for (std::size_t y = 0; y < ygrid.count(); ++y) {
        ygrid.unflat(y, idx);
        a.value(y, 0, 0, 0) = 1.0 + profile[idx[1]];
        a.value(y, 1, 0, 1) = 1.0;
    }
    return a.with_dilation(dilation);
}

CoefficientSet checkerboard_coefficients(const Grid& ygrid, double low, double high)
{
    const int n = ygrid.dims();
    CoefficientSet a(n, 1, n, ygrid);
    std::vector<double> y(n);
    for (std::size_t q = 0; q < ygrid.count(); ++q) {
        ygrid.coordinates(q, y);
        int negatives = 0;
        for (double v : y)
            negatives += v < 0.0;
        const double c = negatives % 2 == 1 ? low : high;
        for (int i = 0; i < n; ++i)
            a.value(q, i, 0, i) = c;
    }
    return a;
}

double coefficient_distance(const CoefficientSet& a, const CoefficientSet& b)
{
    if (!a.ygrid.same_shape(b.ygrid) || a.block() != b.block())
        throw ShapeError("coefficient sets have different shapes");
    const CoefficientSet da = a.dilated(), db = b.dilated();
    double sq = 0.0;
    for (std::size_t k = 0; k < da.samples.size(); ++k) {
        const double diff = da.samples[k] - db.samples[k];
        sq += diff * diff;
    }
    return std::sqrt(sq * a.ygrid.cell_volume());
}

std::vector<double> trig_interpolation_weights(double t, int m)
{
    std::vector<double> w(m);
    for (int j = 0; j < m; ++j) {
        const double s = t - (-0.5 + (j + 0.5) / m);
        double acc = 1.0 + std::cos(pi * m * s);
        for (int k = 1; k < m / 2; ++k)
            acc += 2.0 * std::cos(2.0 * pi * k * s);
        w[j] = acc / m;
    }
    return w;
}

}  // namespace homoglab
