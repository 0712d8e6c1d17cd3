#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <utility>

namespace homoglab::detail {

// Plans are created once per shape and live for the whole process.
struct FftPlans {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

namespace {

using PlanKey = std::pair<std::vector<int>, int>;

std::shared_ptr<const FftPlans> make_plans(const std::vector<int>& sizes, int howmany)
{
    static std::mutex planner;
    static std::map<PlanKey, std::shared_ptr<const FftPlans>> cache;
    std::lock_guard lock(planner);
    PlanKey key{sizes, howmany};
    if (auto it = cache.find(key); it != cache.end())
        return it->second;

    std::size_t count = 1;
    for (int m : sizes)
        count *= static_cast<std::size_t>(m);
    const std::size_t half = count / sizes.back() * (sizes.back() / 2 + 1);
    std::vector<double> real(count * howmany);
    std::vector<cplx> spec(half * howmany);
    auto* cspec = reinterpret_cast<fftw_complex*>(spec.data());
    const int rank = static_cast<int>(sizes.size());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;

    auto plans = std::make_shared<FftPlans>();
    plans->r2c = fftw_plan_many_dft_r2c(rank, sizes.data(), howmany, real.data(), nullptr, howmany, 1, cspec, nullptr,
                                        howmany, 1, flags);
    plans->c2r = fftw_plan_many_dft_c2r(rank, sizes.data(), howmany, cspec, nullptr, howmany, 1, real.data(), nullptr,
                                        howmany, 1, flags);
    cache.emplace(std::move(key), plans);
    return plans;
}

}  // namespace

RealFft::RealFft(const std::vector<int>& sizes, int howmany) : plans_(make_plans(sizes, howmany)), howmany_(howmany)
{
    std::size_t count = 1;
    for (int m : sizes)
        count *= static_cast<std::size_t>(m);
    real_size_ = count * howmany;
    spectral_size_ = count / sizes.back() * (sizes.back() / 2 + 1) * howmany;
}

void RealFft::forward(const double* in, cplx* out) const
{
    fftw_execute_dft_r2c(plans_->r2c, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void RealFft::backward(const cplx* in, double* out, cplx* scratch) const
{
    std::copy(in, in + spectral_size_, scratch);
    fftw_execute_dft_c2r(plans_->c2r, reinterpret_cast<fftw_complex*>(scratch), out);
}

HalfSpectrum::HalfSpectrum(const std::vector<int>& sizes) : sizes_(sizes), shape_(sizes)
{
    shape_.back() = sizes.back() / 2 + 1;
    count_ = 1;
    for (int m : shape_)
        count_ *= static_cast<std::size_t>(m);
}

void HalfSpectrum::indices(std::size_t q, int* k) const
{
    for (std::size_t a = shape_.size(); a-- > 0;) {
        k[a] = static_cast<int>(q % shape_[a]);
        q /= shape_[a];
    }
}

double HalfSpectrum::weight(std::size_t q) const
{
    const int last = static_cast<int>(q % shape_.back());
    return (last == 0 || 2 * last == sizes_.back()) ? 1.0 : 2.0;
}

}  // namespace homoglab::detail
