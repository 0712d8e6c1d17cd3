#include "homoglab/spectral.hpp"

#include <cmath>
#include <numbers>

#include "fft.hpp"
#include "homoglab/errors.hpp"

namespace homoglab {

namespace {

using detail::cplx;

// exp(-2 pi i lambda . y_0) for the first node y_0 = -1/2 + 1/(2M).
std::vector<cplx> node_phase(const std::vector<int>& sizes)
{
    detail::HalfSpectrum half(sizes);
    std::vector<cplx> phase(half.count());
    std::vector<int> k(sizes.size());
    for (std::size_t q = 0; q < half.count(); ++q) {
        half.indices(q, k.data());
        double angle = 0.0;
        for (std::size_t a = 0; a < sizes.size(); ++a) {
            const int lam = detail::signed_frequency(k[a], sizes[a]);
            angle += -2.0 * std::numbers::pi * lam * (-0.5 + 0.5 / sizes[a]);
        }
        phase[q] = std::polar(1.0, angle);
    }
    return phase;
}

}  // namespace

std::complex<double> Spectrum::at(std::span<const int> lambda, int c) const
{
    const std::size_t n = sizes.size();
    if (lambda.size() != n)
        throw ShapeError("frequency has the wrong dimension");
    std::vector<int> k(n);
    for (std::size_t a = 0; a < n; ++a)
        k[a] = ((lambda[a] % sizes[a]) + sizes[a]) % sizes[a];
    bool conjugate = 2 * k[n - 1] > sizes[n - 1];
    if (conjugate)
        for (std::size_t a = 0; a < n; ++a)
            k[a] = (sizes[a] - k[a]) % sizes[a];
    std::size_t q = 0;
    for (std::size_t a = 0; a < n; ++a)
        q = q * (a + 1 == n ? sizes[a] / 2 + 1 : sizes[a]) + k[a];
    const cplx v = coefficients[q * components + c];
    if (!conjugate)
        return v;
    // The conjugate holds the coefficient at -M/2 on Nyquist axes; on
    // cell-centered nodes the +M/2 coefficient is its negative.
    double sign = 1.0;
    for (std::size_t a = 0; a + 1 < n; ++a)
        if (2 * k[a] == sizes[a])
            sign = -sign;
    return sign * std::conj(v);
}

double Spectrum::energy() const
{
    detail::HalfSpectrum half(sizes);
    double total = 0.0;
    for (std::size_t q = 0; q < half.count(); ++q)
        for (int c = 0; c < components; ++c)
            total += half.weight(q) * std::norm(coefficients[q * components + c]);
    return total;
}

Spectrum spectral_forward(const GridField& f)
{
    if (!f.grid.is_periodic())
        throw InvalidArgument("spectral transform needs a periodic grid");
    Spectrum s;
    s.sizes = f.grid.sizes();
    s.components = f.components;
    detail::RealFft fft(s.sizes, f.components);
    s.coefficients.resize(fft.spectral_size());
    fft.forward(f.data.data(), s.coefficients.data());
    const auto phase = node_phase(s.sizes);
    const double scale = 1.0 / static_cast<double>(f.grid.count());
    for (std::size_t q = 0; q < phase.size(); ++q)
        for (int c = 0; c < f.components; ++c)
            s.coefficients[q * f.components + c] *= phase[q] * scale;
    return s;
}

GridField spectral_inverse(const Spectrum& s)
{
    GridField f(Grid::periodic(s.sizes), s.components);
    detail::RealFft fft(s.sizes, s.components);
    if (s.coefficients.size() != fft.spectral_size())
        throw ShapeError("spectrum length does not match its grid");
    const auto phase = node_phase(s.sizes);
    std::vector<cplx> raw(s.coefficients.size()), scratch(s.coefficients.size());
    for (std::size_t q = 0; q < phase.size(); ++q)
        for (int c = 0; c < s.components; ++c)
            raw[q * s.components + c] = s.coefficients[q * s.components + c] * std::conj(phase[q]);
    fft.backward(raw.data(), f.data.data(), scratch.data());
    return f;
}

}  // namespace homoglab
