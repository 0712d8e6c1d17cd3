#pragma once

#include <vector>

#include "fft.hpp"

namespace homoglab::detail {

// Per-mode data on the half spectrum of a periodic grid: the signed
// frequency lambda, |lambda|^2, and the unit derivative direction
// n = lambda~/|lambda~| where lambda~ zeroes Nyquist components.
// n is zero at the mean mode and at modes made only of Nyquist components.
class PeriodicSymbols {
public:
    explicit PeriodicSymbols(const std::vector<int>& sizes);

    int dims() const noexcept { return dims_; }
    std::size_t count() const noexcept { return half_.count(); }
    const HalfSpectrum& half() const noexcept { return half_; }
    const double* direction(std::size_t q) const { return unit_.data() + q * dims_; }
    const int* frequency(std::size_t q) const { return freq_.data() + q * dims_; }
    double frequency_sq(std::size_t q) const { return freq_sq_[q]; }
    double weight(std::size_t q) const { return weight_[q]; }

private:
    int dims_;
    HalfSpectrum half_;
    std::vector<double> unit_;
    std::vector<int> freq_;
    std::vector<double> freq_sq_;
    std::vector<double> weight_;
};

// In place on a raw half spectrum holding N*l components ordered [i*l + r]:
// for each r, removes the mean mode and the component along n, i.e. applies
// the divergence-free projection column-wise.
void project_divergence_free(const PeriodicSymbols& sym, cplx* spec, int l);

// z_r = sum_i i n_i c_{i*l+r}: unit-symbol divergence of each column.
void unit_divergence(const PeriodicSymbols& sym, const cplx* spec, int l, cplx* z);
// Adjoint: c_{i*l+r} = -i n_i z_r.
void unit_divergence_adjoint(const PeriodicSymbols& sym, const cplx* z, int l, cplx* spec);

}  // namespace homoglab::detail
