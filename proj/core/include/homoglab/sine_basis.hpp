#pragma once

#include <vector>

#include "homoglab/grid.hpp"

namespace homoglab {

// Dirichlet sine family psi_k(x) = prod_j sin(k_j pi (x_j - a_j) / L_j),
// k_j = 1..M_j, sampled on a cell-centered box grid. Coefficient arrays are
// indexed [k][component] with k row-major and k_j - 1 as the per-axis index.
//
// The weak divergence operator maps a flux F = (F_1..F_N), each F_i with l
// components and stored [x][i*l + r], to
//   (Psi F)_{k,r} = <F_r, grad psi_k>_h / |grad psi_k|_h,
// with <f, g>_h = h * sum f g the midpoint inner product. Its rows are
// orthonormal, so Psi Psi^* = I and |Psi F| is the discrete H^-1 norm of div F.
class SineBasis {
public:
    explicit SineBasis(const Grid& box);

    const Grid& grid() const noexcept { return grid_; }
    std::size_t modes() const noexcept { return grid_.count(); }

    // b_k = <g, psi_k>_h per component.
    std::vector<double> analyze(const std::vector<double>& g, int comps) const;
    // sum_k c_k psi_k per component.
    std::vector<double> synthesize(const std::vector<double>& c, int comps) const;
    // sum_k c_k * prod_j table_j(k_j, x_j) with the cosine table on `axis`
    // and the sine table on every other axis. Cosine index runs 0..M-1 here.
    std::vector<double> synthesize_mixed(const std::vector<double>& c, int comps, int axis) const;
    std::vector<double> analyze_mixed(const std::vector<double>& g, int comps, int axis) const;

    std::vector<double> weak_divergence(const std::vector<double>& flux, int l) const;
    std::vector<double> weak_divergence_adjoint(const std::vector<double>& coeffs, int l) const;

    // Discrete H^-1 norm of a function g (Dirichlet dual norm, sine series).
    double dual_norm(const std::vector<double>& g, int comps) const;

    // Discrete sums sum_j S_k(x_j)^2 and sum_j C_k(x_j)^2 on `axis` (k = 1..M
    // for the sine table, k = 0..M-1 for the cosine table).
    double sine_norm_sq(int axis, int k) const;
    double cosine_norm_sq(int axis, int k) const;
    // Same for cos(k pi xi), k = 1..M (zero at k = M).
    double shifted_cosine_norm_sq(int axis, int k) const;

private:
    enum class Table { Sine, CosineShifted, Cosine };
    void apply_axis(const std::vector<double>& in, std::vector<double>& out, int comps, int axis, Table t,
                    bool transpose) const;
    const std::vector<double>& table(int axis, Table t) const;

    Grid grid_;
    std::vector<std::vector<double>> sine_;       // [k-1][j], k = 1..M
    std::vector<std::vector<double>> cos_shift_;  // [k-1][j], cos(k pi xi), k = 1..M (row M is zero)
    std::vector<std::vector<double>> cos_;        // [k][j], k = 0..M-1
    std::vector<double> grad_norm_;               // |grad psi_k|_h per mode
};

}  // namespace homoglab
