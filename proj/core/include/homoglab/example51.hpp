#pragma once

#include <optional>
#include <vector>

#include "homoglab/coefficients.hpp"
#include "homoglab/energy.hpp"
#include "homoglab/grid.hpp"
#include "homoglab/integrand.hpp"

namespace homoglab {

// The worked example: A^1 = (1 + a(y_2), 0), A^2 = (0, 1) on a 2D box, where
// the relaxed energy of u is int |u|^2 + int phi_u^2.

// Profile used by default: exp(8 cos 2 pi s), normalized by make_profile.
std::vector<double> benchmark_profile(int m);
CoefficientSet benchmark_coefficients(const Grid& ygrid, int dilation = 1);

// phi with zero mean along every x_1-line and d phi / dx_1 = -div u, in the
// weak sense of the discrete sine/cosine pairing used by the residuals.
GridField example_phi(const GridField& u);
double example_energy_closed_form(const GridField& u);

// u_0 = (-xi1, 0) on the centered square of half-width eps, (-xi2, 0) elsewhere.
GridField nonlocality_field(const Grid& box, double xi1, double xi2, double eps);

struct NonlocalityCrosscheck {
    double points_per_unit = 64.0;
    int y_size = 16;
    double r = 100.0;
};

struct NonlocalityNumeric {
    double outer = 0.0;
    double full = 0.0;
    double inner = 0.0;
    double outer_rel_error = 0.0;
    double full_rel_error = 0.0;
    double inner_rel_error = 0.0;
    int full_cells = 0;
    int inner_cells = 0;
};

struct NonlocalityReport {
    double xi1 = 0.0, xi2 = 0.0, eps = 0.0, delta = 0.0;
    double outer = 0.0;  // energy on Omega minus the closed inner square
    double full = 0.0;   // energy on Omega
    double inner = 0.0;  // energy on the square of half-width eps + delta
    double lhs = 0.0;
    double rhs = 0.0;
    bool violated = false;  // subadditivity fails
    std::optional<NonlocalityNumeric> numeric;
};

NonlocalityReport nonlocality_report(double xi1, double xi2, double eps, double delta,
                                     const std::optional<NonlocalityCrosscheck>& crosscheck = std::nullopt);

struct ConstantCoefficientReport {
    double value_n1 = 0.0;
    double value_n4 = 0.0;
    bool n_independent = false;
    double corrector_mean_max = 0.0;
    bool u_free = false;  // u satisfies the constraint with zero corrector
    double jensen_value = 0.0;  // int f(u)
    double jensen_gap = 0.0;
    bool passed = false;
};

ConstantCoefficientReport constant_coefficient_check(const GridField& u, const CoefficientSet& a, const Integrand& f,
                                                     const RelaxationSpec& spec);

}  // namespace homoglab
