#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "homoglab/coefficients.hpp"
#include "homoglab/grid.hpp"

namespace homoglab {

// epsilon must make the box a union of epsilon-cells with an even number of
// grid cells per epsilon-cell on every axis; then unfolding is an exact
// rearrangement of samples.
struct UnfoldingParams {
    double epsilon = 0.0;
};

// Number of x-grid cells per epsilon-cell on each axis; throws InvalidArgument
// when epsilon is not aligned with the grid.
std::vector<int> unfolding_cell_sizes(const Grid& xgrid, double epsilon);

// epsilon * floor(x / epsilon) + epsilon * (y - floor(y)), componentwise.
std::vector<double> unfolding_point(std::span<const double> x, std::span<const double> y, double epsilon);

// T_eps u on (x-grid of u) x (periodic y-grid with epsilon/h cells per axis).
TwoScaleField unfold(const GridField& u, const UnfoldingParams& params);

// |u - T_eps u|_{L2(Omega x Q)} for each epsilon of the schedule.
std::vector<double> unfold_defect(const GridField& u, std::span<const double> schedule);

struct TwoScalePairing {
    double value = 0.0;
    double epsilon = 0.0;
    std::optional<double> limit_estimate;
};

using TwoScaleTest = std::function<void(std::span<const double> x, std::span<const double> y, std::span<double> out)>;

// integral u_eps(x) . phi(x, x/eps) dx by midpoint quadrature on the grid of u_eps.
// With a candidate limit v (same components as u_eps), limit_estimate is
// integral integral v . phi over Omega x Q on the grid of v.
TwoScalePairing two_scale_pairing(const GridField& u_eps, const TwoScaleTest& phi, double epsilon,
                                  const TwoScaleField* limit = nullptr);
// Same with phi sampled on a two-scale grid whose x-grid equals that of u_eps;
// phi is interpolated trigonometrically in y.
TwoScalePairing two_scale_pairing(const GridField& u_eps, const TwoScaleField& phi, double epsilon,
                                  const TwoScaleField* limit = nullptr);

// u_eps(x) = u(x) + w(x, x/(n eps)) on the grid of u, with w interpolated
// trigonometrically in y.
GridField oscillating_sequence(const GridField& u, const TwoScaleField& w, int n, double epsilon);

// H^-1(Omega) norm of div_x (A(x/eps) u_eps) for a field on a box, where the
// coefficients are interpolated trigonometrically at x/eps.
double oscillating_residual(const GridField& u_eps, const CoefficientSet& a, double epsilon);

// tau_k: z if |z| <= k, else k z / |z|, nodewise.
GridField truncate(const GridField& u, double k);

// Value at y of the trigonometric interpolant of a periodic field (all components).
void interpolate_periodic(const Grid& ygrid, const double* samples, int comps, std::span<const double> y,
                          std::span<double> out);

}  // namespace homoglab
