#include "symbols.hpp"

#include <cmath>

namespace homoglab::detail {

PeriodicSymbols::PeriodicSymbols(const std::vector<int>& sizes)
    : dims_(static_cast<int>(sizes.size())), half_(sizes)
{
    const std::size_t n = half_.count();
    unit_.assign(n * dims_, 0.0);
    freq_.assign(n * dims_, 0);
    freq_sq_.assign(n, 0.0);
    weight_.assign(n, 1.0);
    std::vector<int> k(dims_);
    for (std::size_t q = 0; q < n; ++q) {
        half_.indices(q, k.data());
        double sq = 0.0, tilde_sq = 0.0;
        for (int a = 0; a < dims_; ++a) {
            const int lam = signed_frequency(k[a], sizes[a]);
            freq_[q * dims_ + a] = lam;
            sq += double(lam) * lam;
            if (2 * k[a] != sizes[a]) {
                unit_[q * dims_ + a] = lam;
                tilde_sq += double(lam) * lam;
            }
        }
        freq_sq_[q] = sq;
        weight_[q] = half_.weight(q);
        if (tilde_sq > 0.0) {
            const double inv = 1.0 / std::sqrt(tilde_sq);
            for (int a = 0; a < dims_; ++a)
                unit_[q * dims_ + a] *= inv;
        }
    }
}

void project_divergence_free(const PeriodicSymbols& sym, cplx* spec, int l)
{
    const int n = sym.dims();
    const int comps = n * l;
    for (int c = 0; c < comps; ++c)
        spec[c] = 0.0;
    for (std::size_t q = 1; q < sym.count(); ++q) {
        const double* dir = sym.direction(q);
        cplx* s = spec + q * comps;
        for (int r = 0; r < l; ++r) {
            cplx along = 0.0;
            for (int i = 0; i < n; ++i)
                along += dir[i] * s[i * l + r];
            for (int i = 0; i < n; ++i)
                s[i * l + r] -= dir[i] * along;
        }
    }
}

void unit_divergence(const PeriodicSymbols& sym, const cplx* spec, int l, cplx* z)
{
    const int n = sym.dims();
    const cplx iu(0.0, 1.0);
    for (std::size_t q = 0; q < sym.count(); ++q) {
        const double* dir = sym.direction(q);
        const cplx* s = spec + q * n * l;
        for (int r = 0; r < l; ++r) {
            cplx acc = 0.0;
            for (int i = 0; i < n; ++i)
                acc += dir[i] * s[i * l + r];
            z[q * l + r] = iu * acc;
        }
    }
}

void unit_divergence_adjoint(const PeriodicSymbols& sym, const cplx* z, int l, cplx* spec)
{
    const int n = sym.dims();
    const cplx iu(0.0, 1.0);
    for (std::size_t q = 0; q < sym.count(); ++q) {
        const double* dir = sym.direction(q);
        cplx* s = spec + q * n * l;
        for (int r = 0; r < l; ++r) {
            const cplx v = -iu * z[q * l + r];
            for (int i = 0; i < n; ++i)
                s[i * l + r] = dir[i] * v;
        }
    }
}

}  // namespace homoglab::detail
