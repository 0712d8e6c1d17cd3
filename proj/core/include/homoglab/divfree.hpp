#pragma once

#include <span>
#include <vector>

#include "homoglab/grid.hpp"

namespace homoglab {

// P_D(lambda) = I - lambda lambda^T / |lambda|^2, the projection onto the
// kernel of xi -> lambda . xi.
class SpectralProjector {
public:
    explicit SpectralProjector(Grid grid);

    const Grid& grid() const noexcept { return grid_; }
    // Row-major N x N matrix for lambda != 0.
    std::vector<double> matrix(std::span<const int> lambda) const;

private:
    Grid grid_;
};

// Fourier projection of an N-component periodic field onto zero-mean
// divergence-free fields. Nyquist components are dropped from the derivative
// symbol, which makes the map an exact orthogonal projection on the grid.
GridField divfree_project(const GridField& r);

// divfree_project applied to every x-slice of a two-scale field.
TwoScaleField divfree_project_y(const TwoScaleField& w);

// max over modes of |lambda~ . R^(lambda)|, lambda~ the Nyquist-free symbol.
double spectral_divergence(const GridField& r);

}  // namespace homoglab
