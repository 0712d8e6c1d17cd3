#pragma once

// Reference computations used to check the library. They are written from
// the definitions with plain loops (no FFT, no shared transform tables) so a
// bug in the fast paths cannot hide in both places.

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <vector>

#include "homoglab/grid.hpp"

namespace homoglab::oracle {

using cplx = std::complex<double>;
using std::numbers::pi;

inline int signed_frequency(int k, int m)
{
    return 2 * k < m ? k : k - m;
}

// exp(-2 pi i lambda_k y_j) for the cell-centered nodes of an m-point axis.
inline const std::vector<cplx>& twiddles(int m)
{
    thread_local std::map<int, std::vector<cplx>> cache;
    auto& t = cache[m];
    if (t.empty()) {
        t.resize(static_cast<std::size_t>(m) * m);
        for (int k = 0; k < m; ++k)
            for (int j = 0; j < m; ++j)
                t[static_cast<std::size_t>(k) * m + j] =
                    std::polar(1.0, -2.0 * pi * signed_frequency(k, m) * (-0.5 + (j + 0.5) / m));
    }
    return t;
}

// f^(lambda) = (1 / M1 M2) sum_j f(y_j) exp(-2 pi i lambda . y_j) on the
// cell-centered periodic grid, component c of a field stored [node][comp].
// Returned as [k1][k2] with k the unsigned grid frequency.
inline std::vector<cplx> dft2(const double* samples, int m1, int m2, int comps, int c)
{
    const auto& e1 = twiddles(m1);
    const auto& e2 = twiddles(m2);
    std::vector<cplx> tmp(static_cast<std::size_t>(m1) * m2), out(tmp.size());
    for (int j1 = 0; j1 < m1; ++j1)
        for (int k2 = 0; k2 < m2; ++k2) {
            cplx acc = 0.0;
            for (int j2 = 0; j2 < m2; ++j2)
                acc += samples[(static_cast<std::size_t>(j1) * m2 + j2) * comps + c] * e2[static_cast<std::size_t>(k2) * m2 + j2];
            tmp[static_cast<std::size_t>(j1) * m2 + k2] = acc;
        }
    for (int k1 = 0; k1 < m1; ++k1)
        for (int k2 = 0; k2 < m2; ++k2) {
            cplx acc = 0.0;
            for (int j1 = 0; j1 < m1; ++j1)
                acc += tmp[static_cast<std::size_t>(j1) * m2 + k2] * e1[static_cast<std::size_t>(k1) * m1 + j1];
            out[static_cast<std::size_t>(k1) * m2 + k2] = acc / static_cast<double>(m1 * m2);
        }
    return out;
}

// max over modes of |lambda~ . R^(lambda)| for a 2-component field on a
// periodic m1 x m2 grid; lambda~ drops Nyquist components.
inline double divergence_max(const double* samples, int m1, int m2)
{
    const auto r1 = dft2(samples, m1, m2, 2, 0);
    const auto r2 = dft2(samples, m1, m2, 2, 1);
    double worst = 0.0;
    for (int k1 = 0; k1 < m1; ++k1)
        for (int k2 = 0; k2 < m2; ++k2) {
            const double l1 = 2 * k1 == m1 ? 0.0 : signed_frequency(k1, m1);
            const double l2 = 2 * k2 == m2 ? 0.0 : signed_frequency(k2, m2);
            const std::size_t q = static_cast<std::size_t>(k1) * m2 + k2;
            worst = std::max(worst, std::abs(l1 * r1[q] + l2 * r2[q]));
        }
    return worst;
}

// Discrete H^-1 norm of div F for a 2-component flux on a 2D box: the
// Euclidean norm over k of <F, grad psi_k>_h / |grad psi_k|_h, with
// psi_k = sin(k1 pi (x1 - a1) / L1) sin(k2 pi (x2 - a2) / L2), k = 1..M.
inline double weak_divergence_norm(const Grid& box, const std::vector<double>& flux)
{
    const int m1 = box.size(0), m2 = box.size(1);
    const double l1 = box.length(0), l2 = box.length(1), h = box.cell_volume();
    auto xi = [&](int a, int j) { return (j + 0.5) / box.size(a); };  // (x - a) / L
    double total = 0.0;
    for (int k1 = 1; k1 <= m1; ++k1)
        for (int k2 = 1; k2 <= m2; ++k2) {
            double pair = 0.0, grad = 0.0;
            for (int j1 = 0; j1 < m1; ++j1) {
                const double s1 = std::sin(k1 * pi * xi(0, j1));
                const double c1 = k1 == m1 ? 0.0 : std::cos(k1 * pi * xi(0, j1));
                for (int j2 = 0; j2 < m2; ++j2) {
                    const double s2 = std::sin(k2 * pi * xi(1, j2));
                    const double c2 = k2 == m2 ? 0.0 : std::cos(k2 * pi * xi(1, j2));
                    const double g1 = k1 * pi / l1 * c1 * s2, g2 = k2 * pi / l2 * s1 * c2;
                    const std::size_t x = static_cast<std::size_t>(j1) * m2 + j2;
                    pair += flux[x * 2] * g1 + flux[x * 2 + 1] * g2;
                    grad += g1 * g1 + g2 * g2;
                }
            }
            if (grad > 0.0) {
                const double coef = h * pair / std::sqrt(h * grad);
                total += coef * coef;
            }
        }
    return std::sqrt(total);
}

// (h sum |f|^p) with |.| Euclidean over components.
inline double lp_power(const GridField& f, double p)
{
    double s = 0.0;
    for (std::size_t i = 0; i < f.nodes(); ++i) {
        double m = 0.0;
        for (int c = 0; c < f.components; ++c)
            m += f.at(i, c) * f.at(i, c);
        s += std::pow(std::sqrt(m), p);
    }
    return s * f.grid.cell_volume();
}

}  // namespace homoglab::oracle
