#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "homoglab/grid.hpp"

namespace homoglab::test {

constexpr double pi = std::numbers::pi;

// Hand-rolled generators for the property tests. Every case draws from a
// seeded engine so failures reproduce by seed.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    int even(int lo, int hi) { return 2 * integer(lo / 2, hi / 2); }

    // Trigonometric polynomial with |k|_inf <= band in every component.
    GridField trig_field(const Grid& g, int comps, int band)
    {
        GridField f(g, comps);
        std::vector<double> x(g.dims());
        const int terms = integer(2, 6);
        for (int t = 0; t < terms; ++t) {
            std::vector<int> k(g.dims());
            for (auto& kk : k)
                kk = integer(-band, band);
            std::vector<double> amp(comps);
            for (auto& a : amp)
                a = normal();
            const double phase = uniform(0.0, 2 * pi);
            for (std::size_t i = 0; i < g.count(); ++i) {
                g.coordinates(i, x);
                double arg = phase;
                for (int a = 0; a < g.dims(); ++a)
                    arg += 2 * pi * k[a] * (x[a] - g.lower()[a]) / g.length(a);
                const double s = std::cos(arg);
                for (int c = 0; c < comps; ++c)
                    f.at(i, c) += amp[c] * s;
            }
        }
        return f;
    }

    GridField noise(const Grid& g, int comps)
    {
        GridField f(g, comps);
        for (auto& v : f.data)
            v = normal();
        return f;
    }

    TwoScaleField noise(const Grid& x, const Grid& y, int comps)
    {
        TwoScaleField f(x, y, comps);
        for (auto& v : f.data)
            v = normal();
        return f;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs(const std::vector<double>& a)
{
    double m = 0.0;
    for (double v : a)
        m = std::max(m, std::abs(v));
    return m;
}

template <class F>
GridField sample(const Grid& g, int comps, F&& f)
{
    GridField out(g, comps);
    std::vector<double> x(g.dims());
    for (std::size_t i = 0; i < g.count(); ++i) {
        g.coordinates(i, x);
        f(x, out.node_values(i));
    }
    return out;
}

}  // namespace homoglab::test
