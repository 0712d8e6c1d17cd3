#include "homoglab/sine_basis.hpp"

#include <cmath>
#include <numbers>

#include "homoglab/errors.hpp"

namespace homoglab {

namespace {

using std::numbers::pi;

std::vector<double> make_table(int m, int first_k, bool cosine)
{
    std::vector<double> t(static_cast<std::size_t>(m) * m);
    for (int row = 0; row < m; ++row) {
        const int k = first_k + row;
        for (int j = 0; j < m; ++j) {
            const double arg = k * pi * (j + 0.5) / m;
            t[static_cast<std::size_t>(row) * m + j] = cosine ? std::cos(arg) : std::sin(arg);
        }
        // cos(M pi (j + 1/2) / M) vanishes identically; drop the rounding noise.
        if (cosine && k == m)
            std::fill(t.begin() + static_cast<std::ptrdiff_t>(row) * m, t.begin() + static_cast<std::ptrdiff_t>(row + 1) * m,
                      0.0);
    }
    return t;
}

double row_norm_sq(const std::vector<double>& t, int m, int row)
{
    double s = 0.0;
    for (int j = 0; j < m; ++j)
        s += t[static_cast<std::size_t>(row) * m + j] * t[static_cast<std::size_t>(row) * m + j];
    return s;
}

}  // namespace

SineBasis::SineBasis(const Grid& box) : grid_(box)
{
    if (box.is_periodic())
        throw InvalidArgument("sine basis needs a box domain");
    const int n = box.dims();
    for (int a = 0; a < n; ++a) {
        const int m = box.size(a);
        sine_.push_back(make_table(m, 1, false));
        cos_shift_.push_back(make_table(m, 1, true));
        cos_.push_back(make_table(m, 0, true));
    }

    const double h = grid_.cell_volume();
    grad_norm_.assign(grid_.count(), 0.0);
    std::vector<int> k(n);
    for (std::size_t q = 0; q < grid_.count(); ++q) {
        grid_.unflat(q, k);
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            const double wave = (k[i] + 1) * pi / grid_.length(i);
            double term = wave * wave * h * row_norm_sq(cos_shift_[i], grid_.size(i), k[i]);
            for (int j = 0; j < n; ++j)
                if (j != i)
                    term *= row_norm_sq(sine_[j], grid_.size(j), k[j]);
            total += term;
        }
        grad_norm_[q] = std::sqrt(total);
    }
}

const std::vector<double>& SineBasis::table(int axis, Table t) const
{
    switch (t) {
    case Table::Sine:
        return sine_[axis];
    case Table::CosineShifted:
        return cos_shift_[axis];
    case Table::Cosine:
        break;
    }
    return cos_[axis];
}

void SineBasis::apply_axis(const std::vector<double>& in, std::vector<double>& out, int comps, int axis, Table t,
                           bool transpose) const
{
    const int m = grid_.size(axis);
    std::size_t outer = 1, inner = static_cast<std::size_t>(comps);
    for (int a = 0; a < axis; ++a)
        outer *= grid_.size(a);
    for (int a = axis + 1; a < grid_.dims(); ++a)
        inner *= grid_.size(a);
    const auto& mat = table(axis, t);
    out.assign(in.size(), 0.0);
    for (std::size_t o = 0; o < outer; ++o) {
        const double* src = in.data() + o * m * inner;
        double* dst = out.data() + o * m * inner;
        for (int r = 0; r < m; ++r) {
            for (int c = 0; c < m; ++c) {
                // out[r] += T[r][c] in[c]  or, transposed, out[r] += T[c][r] in[c]
                const double coef = transpose ? mat[static_cast<std::size_t>(c) * m + r] : mat[static_cast<std::size_t>(r) * m + c];
                if (coef == 0.0)
                    continue;
                const double* s = src + c * inner;
                double* d = dst + r * inner;
                for (std::size_t i = 0; i < inner; ++i)
                    d[i] += coef * s[i];
            }
        }
    }
}

std::vector<double> SineBasis::analyze(const std::vector<double>& g, int comps) const
{
    std::vector<double> cur = g, next;
    for (int a = 0; a < grid_.dims(); ++a) {
        apply_axis(cur, next, comps, a, Table::Sine, false);
        cur.swap(next);
    }
    for (double& v : cur)
        v *= grid_.cell_volume();
    return cur;
}

std::vector<double> SineBasis::synthesize(const std::vector<double>& c, int comps) const
{
    std::vector<double> cur = c, next;
    for (int a = 0; a < grid_.dims(); ++a) {
        apply_axis(cur, next, comps, a, Table::Sine, true);
        cur.swap(next);
    }
    return cur;
}

std::vector<double> SineBasis::synthesize_mixed(const std::vector<double>& c, int comps, int axis) const
{
    std::vector<double> cur = c, next;
    for (int a = 0; a < grid_.dims(); ++a) {
        apply_axis(cur, next, comps, a, a == axis ? Table::Cosine : Table::Sine, true);
        cur.swap(next);
    }
    return cur;
}

std::vector<double> SineBasis::analyze_mixed(const std::vector<double>& g, int comps, int axis) const
{
    std::vector<double> cur = g, next;
    for (int a = 0; a < grid_.dims(); ++a) {
        apply_axis(cur, next, comps, a, a == axis ? Table::Cosine : Table::Sine, false);
        cur.swap(next);
    }
    for (double& v : cur)
        v *= grid_.cell_volume();
    return cur;
}

std::vector<double> SineBasis::weak_divergence(const std::vector<double>& flux, int l) const
{
    const int n = grid_.dims();
    const std::size_t count = grid_.count();
    if (flux.size() != count * n * l)
        throw ShapeError("weak divergence: flux has the wrong length");
    const double h = grid_.cell_volume();
    std::vector<double> result(count * l, 0.0), part(count * l), next;
    std::vector<int> k(n);
    for (int i = 0; i < n; ++i) {
        for (std::size_t x = 0; x < count; ++x)
            for (int r = 0; r < l; ++r)
                part[x * l + r] = flux[(x * n + i) * l + r];
        for (int a = 0; a < n; ++a) {
            apply_axis(part, next, l, a, a == i ? Table::CosineShifted : Table::Sine, false);
            part.swap(next);
        }
        for (std::size_t q = 0; q < count; ++q) {
            if (grad_norm_[q] == 0.0)
                continue;
            grid_.unflat(q, k);
            const double scale = (k[i] + 1) * pi / grid_.length(i) * h / grad_norm_[q];
            for (int r = 0; r < l; ++r)
                result[q * l + r] += scale * part[q * l + r];
        }
        part.resize(count * l);
    }
    return result;
}

std::vector<double> SineBasis::weak_divergence_adjoint(const std::vector<double>& coeffs, int l) const
{
    const int n = grid_.dims();
    const std::size_t count = grid_.count();
    if (coeffs.size() != count * l)
        throw ShapeError("weak divergence adjoint: coefficient array has the wrong length");
    std::vector<double> flux(count * n * l, 0.0), part(count * l), next;
    std::vector<int> k(n);
    for (int i = 0; i < n; ++i) {
        for (std::size_t q = 0; q < count; ++q) {
            grid_.unflat(q, k);
            const double scale = grad_norm_[q] == 0.0 ? 0.0 : (k[i] + 1) * pi / grid_.length(i) / grad_norm_[q];
            for (int r = 0; r < l; ++r)
                part[q * l + r] = scale * coeffs[q * l + r];
        }
        for (int a = 0; a < n; ++a) {
            apply_axis(part, next, l, a, a == i ? Table::CosineShifted : Table::Sine, true);
            part.swap(next);
        }
        for (std::size_t x = 0; x < count; ++x)
            for (int r = 0; r < l; ++r)
                flux[(x * n + i) * l + r] = part[x * l + r];
    }
    return flux;
}

double SineBasis::dual_norm(const std::vector<double>& g, int comps) const
{
    const int n = grid_.dims();
    const std::vector<double> b = analyze(g, comps);
    const double h = grid_.cell_volume();
    const double vol = grid_.volume();
    std::vector<int> k(n);
    double total = 0.0;
    for (std::size_t q = 0; q < grid_.count(); ++q) {
        grid_.unflat(q, k);
        double mass = h, wave_sq = 0.0;
        for (int a = 0; a < n; ++a) {
            mass *= sine_norm_sq(a, k[a] + 1);
            const double wave = (k[a] + 1) / grid_.length(a);
            wave_sq += wave * wave;
        }
        const double weight = vol / (std::ldexp(1.0, n) * pi * pi * wave_sq);
        for (int c = 0; c < comps; ++c) {
            const double coef = b[q * comps + c] / mass;
            total += coef * coef * weight;
        }
    }
    return std::sqrt(total);
}

double SineBasis::sine_norm_sq(int axis, int k) const
{
    return row_norm_sq(sine_[axis], grid_.size(axis), k - 1);
}

double SineBasis::shifted_cosine_norm_sq(int axis, int k) const
{
    return row_norm_sq(cos_shift_[axis], grid_.size(axis), k - 1);
}

double SineBasis::cosine_norm_sq(int axis, int k) const
{
    return row_norm_sq(cos_[axis], grid_.size(axis), k);
}

}  // namespace homoglab
