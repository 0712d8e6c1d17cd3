#include "homoglab/norms.hpp"

#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "homoglab/errors.hpp"
#include "homoglab/sine_basis.hpp"
#include "symbols.hpp"

namespace homoglab {

std::vector<double> integrate(const GridField& f)
{
    std::vector<double> sum(f.components, 0.0);
    for (std::size_t x = 0; x < f.nodes(); ++x)
        for (int c = 0; c < f.components; ++c)
            sum[c] += f.at(x, c);
    for (double& s : sum)
        s *= f.grid.cell_volume();
    return sum;
}

double lp_norm(const GridField& f, double p)
{
    if (!(p >= 1.0) || !std::isfinite(p))
        throw InvalidArgument("L^p exponent must lie in [1, inf)");
    double total = 0.0;
    for (std::size_t x = 0; x < f.nodes(); ++x) {
        const double mag = norm2(f.node_values(x));
        total += p == 2.0 ? mag * mag : std::pow(mag, p);
    }
    total *= f.grid.cell_volume();
    return p == 2.0 ? std::sqrt(total) : std::pow(total, 1.0 / p);
}

double hminus1_periodic_norm(const GridField& g)
{
    if (!g.grid.is_periodic())
        throw InvalidArgument("periodic H^-1 norm needs a periodic grid");
    const auto& sizes = g.grid.sizes();
    detail::RealFft fft(sizes, g.components);
    std::vector<detail::cplx> spec(fft.spectral_size());
    fft.forward(g.data.data(), spec.data());
    detail::PeriodicSymbols sym(sizes);
    const double scale = 1.0 / static_cast<double>(g.grid.count());
    const double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
    double total = 0.0;
    for (std::size_t q = 0; q < sym.count(); ++q) {
        const double lam_sq = sym.frequency_sq(q);
        const double w = lam_sq == 0.0 ? 1.0 : sym.weight(q) / (four_pi_sq * lam_sq);
        for (int c = 0; c < g.components; ++c)
            total += w * std::norm(spec[q * g.components + c] * scale);
    }
    return std::sqrt(total);
}

double hminus1_dirichlet_norm(const GridField& g)
{
    if (g.grid.is_periodic())
        throw InvalidArgument("Dirichlet H^-1 norm needs a box domain");
    return SineBasis(g.grid).dual_norm(g.data, g.components);
}

NormReport measure(const GridField& f, NormKind kind, double p)
{
    NormReport r;
    r.kind = kind;
    r.exponent = kind == NormKind::Lp ? p : 2.0;
    switch (kind) {
    case NormKind::Lp:
        r.value = lp_norm(f, p);
        break;
    case NormKind::HminusOnePeriodic:
        r.value = hminus1_periodic_norm(f);
        break;
    case NormKind::HminusOneDirichlet:
        r.value = hminus1_dirichlet_norm(f);
        break;
    }
    return r;
}

}  // namespace homoglab
