#pragma once

#include <vector>

#include "homoglab/grid.hpp"

namespace homoglab {

enum class NormKind { Lp, HminusOnePeriodic, HminusOneDirichlet };

struct NormReport {
    NormKind kind = NormKind::Lp;
    double exponent = 2.0;
    double value = 0.0;
};

// Midpoint quadrature per component.
std::vector<double> integrate(const GridField& f);

// (integral |f|^p)^(1/p) with |.| the Euclidean norm over components.
double lp_norm(const GridField& f, double p);

// sqrt( sum_{lambda != 0} |g^(lambda)|^2 / (4 pi^2 |lambda|^2) + |g^(0)|^2 ),
// summed over components.
double hminus1_periodic_norm(const GridField& g);

// |grad psi|_{L2} for the zero-boundary solution of Laplace psi = g on a box,
// via the sine series of g; summed over components.
double hminus1_dirichlet_norm(const GridField& g);

NormReport measure(const GridField& f, NormKind kind, double p = 2.0);

}  // namespace homoglab
