#pragma once

#include <complex>
#include <span>
#include <vector>

#include "homoglab/grid.hpp"

namespace homoglab {

// Fourier coefficients f^(lambda) = integral_Q f(y) exp(-2 pi i lambda.y) dy of
// a real periodic field, evaluated exactly on the grid (the cell-centered
// phase is included). Only the half spectrum is stored: last-axis modes
// 0..M/2, component-fastest. The Nyquist index carries frequency +M/2.
struct Spectrum {
    std::vector<int> sizes;
    int components = 1;
    std::vector<std::complex<double>> coefficients;

    std::size_t modes() const noexcept { return coefficients.size() / components; }
    // Coefficient at integer frequency lambda (aliased modulo the grid).
    std::complex<double> at(std::span<const int> lambda, int c) const;
    // sum over the full spectrum of |f^(lambda)|^2 (equals the L2(Q) norm squared).
    double energy() const;
};

Spectrum spectral_forward(const GridField& f);
GridField spectral_inverse(const Spectrum& s);

}  // namespace homoglab
