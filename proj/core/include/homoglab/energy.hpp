#pragma once

#include <optional>
#include <string>
#include <vector>

#include "homoglab/coefficients.hpp"
#include "homoglab/constraints.hpp"
#include "homoglab/errors.hpp"
#include "homoglab/grid.hpp"
#include "homoglab/integrand.hpp"

namespace homoglab {

struct RelaxationSpec {
    double r = 10.0;  // truncation radius for the corrector, L2(Omega x Q)
    int n = 1;        // dilation of the coefficients
    double tol_energy = 1e-8;
    double tol_feas = 1e-8;
    int max_projection_iter = 0;  // 0: default of the projection
    int max_outer_iter = 2000;    // projected-gradient iterations
    std::vector<double> r_sweep;  // empty: {r}
    std::vector<int> n_sweep;     // empty: {n}
};

struct EnergyEntry {
    double r = 0.0;
    int n = 1;
    double value = 0.0;
    bool feasible = false;
    int iterations = 0;
};

struct EnergyReport {
    double value = 0.0;  // +inf when no admissible corrector exists
    bool feasible = false;
    bool certified = false;  // minimizer found within tolerance
    std::string label;
    double w_l2 = 0.0;
    double w_max = 0.0;
    double w_mean_max = 0.0;  // max_x |mean_y w|
    ResidualReport residuals;
    int iterations = 0;            // outer iterations (projected gradient) or 0
    int projection_iterations = 0;  // total CG iterations
    double r = 0.0;
    int n = 1;
    std::optional<TwoScaleField> corrector;

    // sweeps only
    std::vector<EnergyEntry> table;
    bool monotone_in_r = true;
};

// Carries the best iterate when the projected gradient hits its cap.
class EnergyNonConvergence : public NonConvergence {
public:
    EnergyNonConvergence(const std::string& what, EnergyReport report)
        : NonConvergence(what), report_(std::move(report))
    {
    }
    const EnergyReport& report() const noexcept { return report_; }

private:
    EnergyReport report_;
};

// Truncated relaxed functional: min of int int f(u + w) over correctors w in
// the dilated constraint class with |w|_2 <= r. Quadratic integrands reduce to
// the least-norm corrector; other convex integrands use projected gradient on
// (affine set) /\ (ball). Non-convex integrands are rejected.
// The corrector lives on the y-grid of the coefficients.
EnergyReport relaxed_energy(const GridField& u, const CoefficientSet& a, const Integrand& f,
                            const RelaxationSpec& spec);

// Sweep over (r, n) with the constant sequence u_n = u. The reported value is
// min over r of min over n: an upper estimate of the homogenized functional.
EnergyReport homogenized_estimate(const GridField& u, const CoefficientSet& a, const Integrand& f,
                                  const RelaxationSpec& spec);

// int f(u) by midpoint quadrature.
double integrate_integrand(const GridField& u, const Integrand& f);

}  // namespace homoglab
