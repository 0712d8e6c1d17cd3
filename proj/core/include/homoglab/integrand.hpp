#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include "homoglab/coefficients.hpp"

namespace homoglab {

// Energy density f : R^d -> [0, inf) with 0 <= f(v) <= C (1 + |v|^p).
struct Integrand {
    std::string name;
    double p = 2.0;
    double C = 1.0;
    bool convex = false;
    std::function<double(std::span<const double>)> value;
    std::function<void(std::span<const double>, std::span<double>)> gradient;
    // Lipschitz constant of the gradient on the ball |v| <= R.
    std::function<double(double R)> gradient_lipschitz;
    // alpha > 0 when f(v) = alpha |v|^2; minimization then reduces to a
    // least-norm problem.
    double quadratic_coefficient = 0.0;

    double operator()(std::span<const double> v) const { return value(v); }
};

// alpha |v|^2
Integrand quadratic(double alpha = 1.0);
// (1 + |v|^2)^{p/2} - 1, convex for p >= 1
Integrand regularized_power(double p);
// |v|^2 + beta |v|^4
Integrand quadratic_quartic(double beta);
// (|v|^2 - 1)^2, not convex; only evaluation is supported.
Integrand double_well();

// g(y, xi) = f(A(y)^{-1} xi) at node y of the assembled operator.
double derived_value(const Integrand& f, const AssembledOperator& op, std::size_t y, std::span<const double> xi);

struct IntegrandCheck {
    double max_relative_error = 0.0;  // gradient vs central differences
    double max_growth_ratio = 0.0;    // max f(v) / (C (1 + |v|^p))
    double min_value = 0.0;
    bool passed = false;
};

// Samples `count` random points of R^d (radius up to `scale`) and compares the
// gradient with central differences and f with its growth bound.
IntegrandCheck check_integrand(const Integrand& f, int d, int count, std::uint64_t seed, double scale = 3.0,
                               double tol = 1e-6);

}  // namespace homoglab
