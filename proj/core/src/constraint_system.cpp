#include "constraint_system.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

#include "homoglab/errors.hpp"
#include "homoglab/parallel.hpp"

namespace homoglab::detail {

struct ConstraintSystem::SliceWork {
    explicit SliceWork(const std::vector<int>& sizes, int rows, std::size_t ny, int d)
        : fft(sizes, rows), spec(fft.spectral_size()), scratch(fft.spectral_size()), flux(ny * rows), v(ny * d)
    {
    }
    RealFft fft;
    std::vector<cplx> spec;
    std::vector<cplx> scratch;
    std::vector<double> flux;
    std::vector<double> v;
};

ConstraintSystem::ConstraintSystem(const Grid& xgrid, const Grid& ygrid, const CoefficientSet& coeffs, bool centered)
    : xgrid_(xgrid), ygrid_(ygrid), n_(coeffs.N), l_(coeffs.l), d_(coeffs.d), centered_(centered), sine_(xgrid),
      sym_(ygrid.sizes())
{
    if (xgrid.is_periodic())
        throw InvalidArgument("the macroscopic domain must be a box");
    if (!ygrid.same_shape(coeffs.ygrid))
        throw ShapeError("coefficients and field use different y-grids");
    if (xgrid.dims() != n_ || ygrid.dims() != n_)
        throw ShapeError("grid dimensions must equal the coefficient dimension N");
    ny_ = ygrid.count();
    nx_ = xgrid.count();
    modes_ = sym_.count();
    amat_ = coeffs.dilated().samples;

    const int rows = n_ * l_;
    amean_.assign(static_cast<std::size_t>(rows) * d_, 0.0);
    for (std::size_t y = 0; y < ny_; ++y)
        for (std::size_t k = 0; k < amean_.size(); ++k)
            amean_[k] += amat_[y * amean_.size() + k] / static_cast<double>(ny_);

    // P = mean_y(A A^T) and, for the centered flux, Pc = mean_y((A - Abar)(A - Abar)^T).
    std::vector<double> p(static_cast<std::size_t>(rows) * rows, 0.0), pc(p.size(), 0.0);
    for (std::size_t y = 0; y < ny_; ++y) {
        const double* m = amat_.data() + y * rows * d_;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < rows; ++j) {
                double acc = 0.0, accc = 0.0;
                for (int c = 0; c < d_; ++c) {
                    acc += m[i * d_ + c] * m[j * d_ + c];
                    const double bi = centered_ ? m[i * d_ + c] - amean_[i * d_ + c] : m[i * d_ + c];
                    const double bj = centered_ ? m[j * d_ + c] - amean_[j * d_ + c] : m[j * d_ + c];
                    accc += bi * bj;
                }
                p[i * rows + j] += acc / static_cast<double>(ny_);
                pc[i * rows + j] += accc / static_cast<double>(ny_);
            }
    }

    // Diagonal of Psi (Pc x I) Psi^*: weak_divergence applied to unit vectors
    // factorizes per axis, so only the diagonal Pc entries enter when the
    // mixed sine/cosine cross terms are dropped.
    b_diag_.assign(nx_ * l_, 0.0);
    {
        std::vector<int> k(n_);
        const double h = xgrid_.cell_volume();
        for (std::size_t q = 0; q < nx_; ++q) {
            xgrid_.unflat(q, k);
            double g2 = 0.0;
            std::vector<double> term(n_);
            for (int i = 0; i < n_; ++i) {
                const double wave = (k[i] + 1) * std::numbers::pi / xgrid_.length(i);
                double t = wave * wave * h * sine_.shifted_cosine_norm_sq(i, k[i] + 1);
                for (int j = 0; j < n_; ++j)
                    if (j != i)
                        t *= sine_.sine_norm_sq(j, k[j] + 1);
                term[i] = t;
                g2 += t;
            }
            for (int r = 0; r < l_; ++r) {
                double acc = 0.0;
                if (g2 > 0.0)
                    for (int i = 0; i < n_; ++i)
                        acc += pc[(i * l_ + r) * rows + (i * l_ + r)] * term[i] / g2;
                b_diag_[q * l_ + r] = acc;
            }
        }
    }

    // Per-mode l x l blocks sum_ij n_i n_j P_(i r),(j s), inverted.
    c_inverse_.assign(modes_ * l_ * l_, 0.0);
    {
        using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic>;
        Mat blk(l_, l_);
        for (std::size_t q = 0; q < modes_; ++q) {
            const double* dir = sym_.direction(q);
            double nn = 0.0;
            for (int i = 0; i < n_; ++i)
                nn += dir[i] * dir[i];
            if (nn == 0.0)
                continue;
            for (int r = 0; r < l_; ++r)
                for (int s2 = 0; s2 < l_; ++s2) {
                    double acc = 0.0;
                    for (int i = 0; i < n_; ++i)
                        for (int j = 0; j < n_; ++j)
                            acc += dir[i] * dir[j] * p[(i * l_ + r) * rows + (j * l_ + s2)];
                    blk(r, s2) = acc;
                }
            Mat inv = blk.inverse();
            for (int r = 0; r < l_; ++r)
                for (int s2 = 0; s2 < l_; ++s2)
                    c_inverse_[(q * l_ + r) * l_ + s2] = inv(r, s2);
        }
    }
}

ConstraintVector ConstraintSystem::precondition(const ConstraintVector& r) const
{
    ConstraintVector z = r;
    for (std::size_t i = 0; i < z.b.size(); ++i)
        if (b_diag_[i] > 1e-14)
            z.b[i] = r.b[i] / b_diag_[i];
    parallel_for(nx_, [&](std::size_t begin, std::size_t end) {
        std::vector<cplx> tmp(l_);
        for (std::size_t x = begin; x < end; ++x)
            for (std::size_t q = 0; q < modes_; ++q) {
                const cplx* src = r.c.data() + (x * modes_ + q) * l_;
                cplx* dst = z.c.data() + (x * modes_ + q) * l_;
                const double* inv = c_inverse_.data() + q * l_ * l_;
                for (int a = 0; a < l_; ++a) {
                    cplx acc = 0.0;
                    for (int b = 0; b < l_; ++b)
                        acc += inv[a * l_ + b] * src[b];
                    tmp[a] = acc;
                }
                for (int a = 0; a < l_; ++a)
                    dst[a] = tmp[a];
            }
    });
    return z;
}

ConstraintVector ConstraintSystem::zero() const
{
    ConstraintVector p;
    p.a.assign(nx_ * d_, 0.0);
    p.b.assign(nx_ * l_, 0.0);
    p.c.assign(nx_ * modes_ * l_, cplx(0.0));
    return p;
}

double ConstraintSystem::norm_a(const ConstraintVector& p) const
{
    double s = 0.0;
    for (double v : p.a)
        s += v * v;
    return std::sqrt(s * xgrid_.cell_volume());
}

double ConstraintSystem::norm_b(const ConstraintVector& p) const
{
    double s = 0.0;
    for (double v : p.b)
        s += v * v;
    return std::sqrt(s);
}

double ConstraintSystem::norm_c(const ConstraintVector& p) const
{
    return std::sqrt(std::max(0.0, inner(ConstraintVector{{}, {}, p.c}, ConstraintVector{{}, {}, p.c})));
}

double ConstraintSystem::inner(const ConstraintVector& p, const ConstraintVector& q) const
{
    double sa = 0.0, sb = 0.0, sc = 0.0;
    for (std::size_t i = 0; i < p.a.size() && i < q.a.size(); ++i)
        sa += p.a[i] * q.a[i];
    for (std::size_t i = 0; i < p.b.size() && i < q.b.size(); ++i)
        sb += p.b[i] * q.b[i];
    const std::size_t per_x = modes_ * l_;
    for (std::size_t x = 0; x < p.c.size() / std::max<std::size_t>(per_x, 1) && x * per_x < q.c.size(); ++x)
        for (std::size_t m = 0; m < modes_; ++m) {
            const double wt = sym_.weight(m);
            for (int r = 0; r < l_; ++r) {
                const std::size_t k = x * per_x + m * l_ + r;
                sc += wt * (p.c[k].real() * q.c[k].real() + p.c[k].imag() * q.c[k].imag());
            }
        }
    return (sa + sc) * xgrid_.cell_volume() + sb;
}

double ConstraintSystem::norm(const ConstraintVector& p) const
{
    return std::sqrt(std::max(0.0, inner(p, p)));
}

void ConstraintSystem::axpy(double alpha, const ConstraintVector& x, ConstraintVector& y)
{
    for (std::size_t i = 0; i < y.a.size(); ++i)
        y.a[i] += alpha * x.a[i];
    for (std::size_t i = 0; i < y.b.size(); ++i)
        y.b[i] += alpha * x.b[i];
    for (std::size_t i = 0; i < y.c.size(); ++i)
        y.c[i] += alpha * x.c[i];
}

void ConstraintSystem::scale_add(const ConstraintVector& x, double beta, ConstraintVector& y)
{
    for (std::size_t i = 0; i < y.a.size(); ++i)
        y.a[i] = x.a[i] + beta * y.a[i];
    for (std::size_t i = 0; i < y.b.size(); ++i)
        y.b[i] = x.b[i] + beta * y.b[i];
    for (std::size_t i = 0; i < y.c.size(); ++i)
        y.c[i] = x.c[i] + beta * y.c[i];
}

// Per-slice forward map: mean of w, the flux A v with its y-mean, and the
// unit y-divergence of the flux.
void ConstraintSystem::forward_slice(SliceWork& work, const double* v, const double* w, std::size_t x,
                                     ConstraintVector& out, double* flux_out) const
{
    const int rows = n_ * l_;
    double* a_out = out.a.data() + x * d_;
    for (int c = 0; c < d_; ++c)
        a_out[c] = 0.0;
    for (std::size_t y = 0; y < ny_; ++y)
        for (int c = 0; c < d_; ++c)
            a_out[c] += w[y * d_ + c];
    for (int c = 0; c < d_; ++c)
        a_out[c] /= static_cast<double>(ny_);
    double* fx = flux_out + x * rows;
    for (int k = 0; k < rows; ++k)
        fx[k] = 0.0;
    for (std::size_t y = 0; y < ny_; ++y) {
        const double* m = amat_.data() + y * rows * d_;
        const double* vy = v + y * d_;
        double* s = work.flux.data() + y * rows;
        for (int k = 0; k < rows; ++k) {
            double acc = 0.0;
            for (int c = 0; c < d_; ++c)
                acc += m[k * d_ + c] * vy[c];
            s[k] = acc;
            fx[k] += acc;
        }
    }
    for (int k = 0; k < rows; ++k) {
        fx[k] /= static_cast<double>(ny_);
        if (centered_)
            for (int c = 0; c < d_; ++c)
                fx[k] -= amean_[k * d_ + c] * a_out[c];
    }
    work.fft.forward(work.flux.data(), work.spec.data());
    const double inv = 1.0 / static_cast<double>(ny_);
    for (auto& z : work.spec)
        z *= inv;
    unit_divergence(sym_, work.spec.data(), l_, out.c.data() + x * modes_ * l_);
}

ConstraintVector ConstraintSystem::residual(const TwoScaleField& w, const GridField* u, std::vector<double>* slice_c) const
{
    if (!w.xgrid.same_shape(xgrid_) || !w.ygrid.same_shape(ygrid_) || w.components != d_)
        throw ShapeError("two-scale field does not match the constraint system");
    if (u && (!u->grid.same_shape(xgrid_) || u->components != d_))
        throw ShapeError("macroscopic field does not match the constraint system");
    const int rows = n_ * l_;
    ConstraintVector out = zero();
    std::vector<double> flux(nx_ * rows);
    if (slice_c)
        slice_c->assign(nx_, 0.0);
    parallel_for(nx_, [&](std::size_t begin, std::size_t end) {
        SliceWork work(ygrid_.sizes(), rows, ny_, d_);
        for (std::size_t x = begin; x < end; ++x) {
            const double* ws = w.slice(x);
            const double* vptr = ws;
            if (u) {
                for (std::size_t y = 0; y < ny_; ++y)
                    for (int c = 0; c < d_; ++c)
                        work.v[y * d_ + c] = ws[y * d_ + c] + u->at(x, c);
                vptr = work.v.data();
            }
            forward_slice(work, vptr, ws, x, out, flux.data());
            if (slice_c) {
                double s = 0.0;
                const cplx* z = out.c.data() + x * modes_ * l_;
                for (std::size_t m = 0; m < modes_; ++m)
                    for (int r = 0; r < l_; ++r)
                        s += sym_.weight(m) * std::norm(z[m * l_ + r]);
                (*slice_c)[x] = std::sqrt(s);
            }
        }
    });
    out.b = sine_.weak_divergence(flux, l_);
    return out;
}

void ConstraintSystem::adjoint_slice(SliceWork& work, const ConstraintVector& p, const std::vector<double>& g,
                                     std::size_t x, double* wout) const
{
    const int rows = n_ * l_;
    unit_divergence_adjoint(sym_, p.c.data() + x * modes_ * l_, l_, work.spec.data());
    work.fft.backward(work.spec.data(), work.flux.data(), work.scratch.data());
    const double* gx = g.data() + x * rows;
    const double* ax = p.a.data() + x * d_;
    for (std::size_t y = 0; y < ny_; ++y) {
        const double* m = amat_.data() + y * rows * d_;
        const double* s = work.flux.data() + y * rows;
        double* wy = wout + y * d_;
        for (int c = 0; c < d_; ++c)
            wy[c] = ax[c];
        for (int k = 0; k < rows; ++k) {
            const double coef = s[k] + gx[k];
            for (int c = 0; c < d_; ++c)
                wy[c] += m[k * d_ + c] * coef;
            if (centered_)
                for (int c = 0; c < d_; ++c)
                    wy[c] -= amean_[k * d_ + c] * gx[k];
        }
    }
}

TwoScaleField ConstraintSystem::adjoint(const ConstraintVector& p) const
{
    const int rows = n_ * l_;
    const std::vector<double> g = sine_.weak_divergence_adjoint(p.b, l_);
    TwoScaleField w(xgrid_, ygrid_, d_);
    parallel_for(nx_, [&](std::size_t begin, std::size_t end) {
        SliceWork work(ygrid_.sizes(), rows, ny_, d_);
        for (std::size_t x = begin; x < end; ++x)
            adjoint_slice(work, p, g, x, w.slice(x));
    });
    return w;
}

ConstraintVector ConstraintSystem::normal(const ConstraintVector& p) const
{
    const int rows = n_ * l_;
    const std::vector<double> g = sine_.weak_divergence_adjoint(p.b, l_);
    ConstraintVector out = zero();
    std::vector<double> flux(nx_ * rows);
    parallel_for(nx_, [&](std::size_t begin, std::size_t end) {
        SliceWork work(ygrid_.sizes(), rows, ny_, d_);
        std::vector<double> wslice(ny_ * d_);
        for (std::size_t x = begin; x < end; ++x) {
            adjoint_slice(work, p, g, x, wslice.data());
            forward_slice(work, wslice.data(), wslice.data(), x, out, flux.data());
        }
    });
    out.b = sine_.weak_divergence(flux, l_);
    return out;
}

std::vector<double> ConstraintSystem::mean_flux(const TwoScaleField& w, const GridField* u) const
{
    const int rows = n_ * l_;
    std::vector<double> flux(nx_ * rows, 0.0);
    for (std::size_t x = 0; x < nx_; ++x) {
        const double* ws = w.slice(x);
        double* fx = flux.data() + x * rows;
        for (std::size_t y = 0; y < ny_; ++y) {
            const double* m = amat_.data() + y * rows * d_;
            for (int k = 0; k < rows; ++k) {
                double acc = 0.0;
                for (int c = 0; c < d_; ++c)
                    acc += m[k * d_ + c] * (ws[y * d_ + c] + (u ? u->at(x, c) : 0.0));
                fx[k] += acc;
            }
        }
        for (int k = 0; k < rows; ++k)
            fx[k] /= static_cast<double>(ny_);
    }
    return flux;
}

}  // namespace homoglab::detail
