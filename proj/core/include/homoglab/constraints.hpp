#pragma once

#include "homoglab/coefficients.hpp"
#include "homoglab/grid.hpp"

namespace homoglab {

// Residuals of the two-scale constraint system for v = u + w:
//   x: H^-1(Omega) norm of div_x of mean_y A(n y) v
//   y: per x-slice, H^-1(Q) norm of div_y A(n y) v (max and L2 over x)
//   mean: max_x |mean_y w|
struct ResidualReport {
    double x_residual = 0.0;
    double y_residual_max = 0.0;
    double y_residual_l2 = 0.0;
    double mean_residual = 0.0;

    double worst() const;
};

ResidualReport constraint_residuals(const GridField& u, const TwoScaleField& w, const CoefficientSet& a);

struct ProjectionOptions {
    double tol = 1e-8;
    int max_iter = 0;  // 0: 10 * sqrt(number of unknowns)
};

struct ProjectionStats {
    int iterations = 0;
    double initial_residual = 0.0;
    double final_residual = 0.0;
};

// Orthogonal L2(Omega x Q) projection of w onto
//   { w : mean_y w = 0, div_x mean_y A(ny)(u + w) = 0, div_y A(ny)(u + w) = 0 },
// by conjugate gradients on the normal equations of the constraint operator.
// Throws InfeasibleConstraint when the residual stalls above 10 * tol.
TwoScaleField affine_feasibility_project(const TwoScaleField& w, const GridField& u, const CoefficientSet& a,
                                         const ProjectionOptions& options = {}, ProjectionStats* stats = nullptr);

// Projection of a combined field v(x, y) onto fields satisfying both
// divergence constraints: the flux R = A v is split into its y-fluctuation,
// projected divergence-free in y, and its y-mean, projected weakly
// divergence-free on the box; the result is A^{-1} of the recombined flux.
// Feasible inputs are fixed points.
TwoScaleField coupled_project(const TwoScaleField& v, const CoefficientSet& a);

}  // namespace homoglab
