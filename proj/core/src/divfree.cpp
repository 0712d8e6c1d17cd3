#include "homoglab/divfree.hpp"

#include <cmath>

#include "fft.hpp"
#include "homoglab/errors.hpp"
#include "homoglab/parallel.hpp"
#include "symbols.hpp"

namespace homoglab {

SpectralProjector::SpectralProjector(Grid grid) : grid_(std::move(grid))
{
    if (!grid_.is_periodic())
        throw InvalidArgument("spectral projector needs a periodic grid");
}

std::vector<double> SpectralProjector::matrix(std::span<const int> lambda) const
{
    const int n = grid_.dims();
    if (static_cast<int>(lambda.size()) != n)
        throw ShapeError("frequency has the wrong dimension");
    double sq = 0.0;
    for (int v : lambda)
        sq += double(v) * v;
    if (sq == 0.0)
        throw InvalidArgument("projector is undefined at lambda = 0");
    std::vector<double> p(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            p[i * n + j] = (i == j ? 1.0 : 0.0) - lambda[i] * double(lambda[j]) / sq;
    return p;
}

namespace {

void check_vector_field(const Grid& g, int components)
{
    if (!g.is_periodic())
        throw InvalidArgument("divergence-free projection needs a periodic grid");
    if (components != g.dims())
        throw ShapeError("divergence-free projection needs N = " + std::to_string(g.dims()) + " components, got " +
                         std::to_string(components));
}

}  // namespace

GridField divfree_project(const GridField& r)
{
    check_vector_field(r.grid, r.components);
    const auto& sizes = r.grid.sizes();
    detail::RealFft fft(sizes, r.components);
    detail::PeriodicSymbols sym(sizes);
    std::vector<detail::cplx> spec(fft.spectral_size()), scratch(fft.spectral_size());
    fft.forward(r.data.data(), spec.data());
    detail::project_divergence_free(sym, spec.data(), 1);
    GridField out(r.grid, r.components);
    fft.backward(spec.data(), out.data.data(), scratch.data());
    const double scale = 1.0 / static_cast<double>(r.grid.count());
    for (double& v : out.data)
        v *= scale;
    return out;
}

TwoScaleField divfree_project_y(const TwoScaleField& w)
{
    check_vector_field(w.ygrid, w.components);
    const auto& sizes = w.ygrid.sizes();
    detail::PeriodicSymbols sym(sizes);
    TwoScaleField out(w.xgrid, w.ygrid, w.components);
    const double scale = 1.0 / static_cast<double>(w.ygrid.count());
    parallel_for(w.xgrid.count(), [&](std::size_t begin, std::size_t end) {
        detail::RealFft fft(sizes, w.components);
        std::vector<detail::cplx> spec(fft.spectral_size()), scratch(fft.spectral_size());
        for (std::size_t x = begin; x < end; ++x) {
            fft.forward(w.slice(x), spec.data());
            detail::project_divergence_free(sym, spec.data(), 1);
            double* dst = out.slice(x);
            fft.backward(spec.data(), dst, scratch.data());
            for (std::size_t i = 0; i < out.slice_size(); ++i)
                dst[i] *= scale;
        }
    });
    return out;
}

double spectral_divergence(const GridField& r)
{
    check_vector_field(r.grid, r.components);
    const auto& sizes = r.grid.sizes();
    detail::RealFft fft(sizes, r.components);
    detail::PeriodicSymbols sym(sizes);
    std::vector<detail::cplx> spec(fft.spectral_size());
    fft.forward(r.data.data(), spec.data());
    const double scale = 1.0 / static_cast<double>(r.grid.count());
    const int n = r.components;
    std::vector<int> k(n);
    double worst = 0.0;
    for (std::size_t q = 0; q < sym.count(); ++q) {
        const int* lam = sym.frequency(q);
        sym.half().indices(q, k.data());
        detail::cplx acc = 0.0;
        for (int i = 0; i < n; ++i)
            if (2 * k[i] != sizes[i])
                acc += double(lam[i]) * spec[q * n + i];
        worst = std::max(worst, std::abs(acc) * scale);
    }
    return worst;
}

}  // namespace homoglab
