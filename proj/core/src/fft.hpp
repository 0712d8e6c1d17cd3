#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace homoglab::detail {

using cplx = std::complex<double>;

struct FftPlans;

// Batched real-to-complex transforms over interleaved components: `howmany`
// fields stored component-fastest on a row-major grid. Spectra are half
// spectra (last axis M/2+1), also component-fastest. Unnormalized both ways.
// Plans are cached process-wide; execution is thread-safe.
class RealFft {
public:
    RealFft(const std::vector<int>& sizes, int howmany);

    std::size_t real_size() const noexcept { return real_size_; }
    std::size_t spectral_size() const noexcept { return spectral_size_; }
    std::size_t modes() const noexcept { return spectral_size_ / howmany_; }

    void forward(const double* in, cplx* out) const;
    // c2r destroys its input, so the spectrum is first copied into scratch
    // (length spectral_size()).
    void backward(const cplx* in, double* out, cplx* scratch) const;

private:
    std::shared_ptr<const FftPlans> plans_;
    int howmany_;
    std::size_t real_size_;
    std::size_t spectral_size_;
};

// Signed frequency of DFT index k on an axis of M points: k for k <= M/2,
// k - M above. The Nyquist index M/2 maps to +M/2.
inline int signed_frequency(int k, int m) { return 2 * k <= m ? k : k - m; }

// Iterates the half-spectrum index set: per-axis mode indices of flat mode q.
class HalfSpectrum {
public:
    explicit HalfSpectrum(const std::vector<int>& sizes);
    std::size_t count() const noexcept { return count_; }
    const std::vector<int>& shape() const noexcept { return shape_; }
    void indices(std::size_t q, int* k) const;
    // Multiplicity of mode q in the full spectrum sum (1 on the self-paired
    // last-axis planes 0 and M/2, else 2).
    double weight(std::size_t q) const;

private:
    std::vector<int> sizes_;
    std::vector<int> shape_;
    std::size_t count_;
};

}  // namespace homoglab::detail
