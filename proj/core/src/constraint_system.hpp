#pragma once

#include <memory>
#include <vector>

#include "fft.hpp"
#include "homoglab/coefficients.hpp"
#include "homoglab/grid.hpp"
#include "homoglab/sine_basis.hpp"
#include "symbols.hpp"

namespace homoglab::detail {

// Element of the constraint range:
//   a = mean_y w                              [x][c]
//   b = weak x-divergence of mean_y(A w)      [k][r]
//   c = unit y-divergence of A w per x-slice  [x][half-mode][r]
struct ConstraintVector {
    std::vector<double> a;
    std::vector<double> b;
    std::vector<cplx> c;
};

// The linear constraint operator B = (B_a, B_b, B_c) acting on two-scale
// fields w with the inner product sum h_x h_y w.w'. The a-block inner product
// makes B_a B_a^* = I.
//
// With `centered` set, the b-block uses the flux mean_y(A v) - mean_y(A) mean_y(w)
// instead of mean_y(A v). Both define the same feasible set once mean_y w = 0,
// but the centered rows are orthogonal to the a-block, which is what the
// projection solver wants.
class ConstraintSystem {
public:
    ConstraintSystem(const Grid& xgrid, const Grid& ygrid, const CoefficientSet& coeffs, bool centered = false);

    // Block-diagonal approximation of (B B^*)^{-1}: identity on a, the exact
    // diagonal on b, and per-mode inverses built from mean_y(A A^T) on c.
    ConstraintVector precondition(const ConstraintVector& r) const;

    const Grid& xgrid() const noexcept { return xgrid_; }
    const Grid& ygrid() const noexcept { return ygrid_; }
    int components() const noexcept { return d_; }

    ConstraintVector zero() const;
    double inner(const ConstraintVector& p, const ConstraintVector& q) const;
    double norm(const ConstraintVector& p) const;
    double norm_a(const ConstraintVector& p) const;
    double norm_b(const ConstraintVector& p) const;
    double norm_c(const ConstraintVector& p) const;
    static void axpy(double alpha, const ConstraintVector& x, ConstraintVector& y);
    static void scale_add(const ConstraintVector& x, double beta, ConstraintVector& y);  // y = x + beta y

    // B applied to w with u broadcast in y added before the b and c blocks;
    // u may be null. Also returns per-slice c-norms when requested.
    ConstraintVector residual(const TwoScaleField& w, const GridField* u, std::vector<double>* slice_c = nullptr) const;
    TwoScaleField adjoint(const ConstraintVector& p) const;
    ConstraintVector normal(const ConstraintVector& p) const;

    // Flux mean_y(A v) for v = u + w, laid out [x][i*l + r].
    std::vector<double> mean_flux(const TwoScaleField& w, const GridField* u) const;
    const SineBasis& sine() const noexcept { return sine_; }
    const PeriodicSymbols& symbols() const noexcept { return sym_; }
    const std::vector<double>& operator_samples() const noexcept { return amat_; }

private:
    struct SliceWork;
    void forward_slice(SliceWork& work, const double* v, const double* w, std::size_t x, ConstraintVector& out,
                       double* flux_out) const;
    void adjoint_slice(SliceWork& work, const ConstraintVector& p, const std::vector<double>& g, std::size_t x,
                       double* wout) const;

    Grid xgrid_;
    Grid ygrid_;
    int n_, l_, d_;
    std::size_t ny_, nx_, modes_;
    bool centered_;
    std::vector<double> amat_;      // [y][rows x d]
    std::vector<double> amean_;     // mean_y A, rows x d
    std::vector<double> b_diag_;    // [k][r]
    std::vector<double> c_inverse_; // [mode][l x l]
    SineBasis sine_;
    PeriodicSymbols sym_;
};

}  // namespace homoglab::detail
