#pragma once

#include <functional>
#include <span>
#include <vector>

#include "homoglab/grid.hpp"

namespace homoglab {

// Matrices A^i(y) in R^{l x d}, i = 1..N, sampled on a periodic y-grid.
// samples is indexed [node][i][r][c]; read as a d x d block per node this is
// exactly the assembled operator with row i*l + r. `dilation` n means the
// set represents y -> A(n y).
struct CoefficientSet {
    int N = 0;
    int l = 0;
    int d = 0;
    Grid ygrid;
    std::vector<double> samples;
    int dilation = 1;

    CoefficientSet() = default;
    CoefficientSet(int N, int l, int d, Grid ygrid);

    std::size_t block() const noexcept { return static_cast<std::size_t>(N) * l * d; }
    const double* node(std::size_t y) const { return samples.data() + y * block(); }
    double& value(std::size_t y, int i, int r, int c) { return samples[y * block() + (i * l + r) * d + c]; }
    double value(std::size_t y, int i, int r, int c) const { return samples[y * block() + (i * l + r) * d + c]; }

    // Samples of A(n y) on the same grid, with dilation reset to 1. Odd n is an
    // exact index remap; even n moves cell centers off the grid and uses
    // trigonometric interpolation.
    CoefficientSet dilated() const;
    CoefficientSet with_dilation(int n) const;
    bool is_constant(double tol = 0.0) const;
    double max_abs() const;
};

// Nodewise assembled operator on the y-grid of the (dilated) coefficients.
struct AssembledOperator {
    int d = 0;
    Grid ygrid;
    std::vector<double> matrix;   // [node][d x d] row-major
    std::vector<double> inverse;  // [node][d x d] row-major
    double gamma = 0.0;           // min over nodes of lambda_min(sym part)
    double inverse_bound = 0.0;   // max over nodes of |inverse|_2

    const double* at(std::size_t y) const { return matrix.data() + y * d * d; }
    const double* inverse_at(std::size_t y) const { return inverse.data() + y * d * d; }
};

// Throws ShapeError when l*N != d and EllipticityViolation when gamma <= 0.
AssembledOperator assemble(const CoefficientSet& a);

// (raw - mean) / |raw - mean|_{L2(period)}; rejects constant input and
// normalized profiles with min <= -1 + 1e-9.
std::vector<double> make_profile(std::span<const double> raw);
// raw(s) at the cell centers s_j = -1/2 + (j + 1/2)/m.
std::vector<double> sample_profile(const std::function<double(double)>& raw, int m);

// Periodic convolution with a nonnegative smooth bump of radius 1/k,
// normalized to unit discrete mass.
CoefficientSet mollify(const CoefficientSet& a, int k);

// A^i = e_i^T (l = 1, d = N): the divergence acting on vector fields.
CoefficientSet identity_rows(const Grid& ygrid);
// A^1 = (1 + a(y_2), 0), A^2 = (0, 1) with the profile sampled along y_2.
CoefficientSet example51_coefficients(const std::vector<double>& profile, const Grid& ygrid, int dilation = 1);
// A^i = c(y) e_i^T with c = low on cells with an odd number of negative
// coordinates and high elsewhere (2x2 checkerboard for N = 2).
CoefficientSet checkerboard_coefficients(const Grid& ygrid, double low, double high);

// Frobenius L2(Q) distance between two coefficient sets on the same grid.
double coefficient_distance(const CoefficientSet& a, const CoefficientSet& b);

// Periodic trigonometric interpolation weights: value at t of the band-limited
// interpolant through samples at the cell centers of an m-point grid.
std::vector<double> trig_interpolation_weights(double t, int m);

}  // namespace homoglab
