#include "homoglab/grid.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "homoglab/errors.hpp"

namespace homoglab {

Grid::Grid(bool periodic, std::vector<double> lower, std::vector<double> upper, std::vector<int> sizes)
    : periodic_(periodic), lower_(std::move(lower)), upper_(std::move(upper)), sizes_(std::move(sizes))
{
    if (sizes_.empty())
        throw InvalidArgument("grid needs at least one axis");
    if (lower_.size() != sizes_.size() || upper_.size() != sizes_.size())
        throw ShapeError("grid corner dimension does not match number of axes");
    count_ = 1;
    cell_volume_ = 1.0;
    for (std::size_t a = 0; a < sizes_.size(); ++a) {
        if (sizes_[a] < 1)
            throw InvalidArgument("grid size must be positive on axis " + std::to_string(a));
        if (!(upper_[a] > lower_[a]) || !std::isfinite(lower_[a]) || !std::isfinite(upper_[a]))
            throw InvalidArgument("box side length must be positive on axis " + std::to_string(a));
        count_ *= static_cast<std::size_t>(sizes_[a]);
        cell_volume_ *= (upper_[a] - lower_[a]) / sizes_[a];
    }
}

Grid Grid::periodic(std::vector<int> sizes)
{
    for (int m : sizes)
        if (m < 2 || m % 2 != 0)
            throw InvalidArgument("periodic grid sizes must be even and at least 2, got " + std::to_string(m));
    std::vector<double> lo(sizes.size(), -0.5), hi(sizes.size(), 0.5);
    return Grid(true, std::move(lo), std::move(hi), std::move(sizes));
}

Grid Grid::box(std::vector<double> lower, std::vector<double> upper, std::vector<int> sizes)
{
    return Grid(false, std::move(lower), std::move(upper), std::move(sizes));
}

Grid Grid::unit_box(int dims, int size)
{
    return box(std::vector<double>(dims, 0.0), std::vector<double>(dims, 1.0), std::vector<int>(dims, size));
}

std::size_t Grid::flat(std::span<const int> idx) const
{
    std::size_t f = 0;
    for (std::size_t a = 0; a < sizes_.size(); ++a)
        f = f * sizes_[a] + idx[a];
    return f;
}

void Grid::unflat(std::size_t flat, std::span<int> idx) const
{
    for (std::size_t a = sizes_.size(); a-- > 0;) {
        idx[a] = static_cast<int>(flat % sizes_[a]);
        flat /= sizes_[a];
    }
}

void Grid::coordinates(std::size_t flat, std::span<double> x) const
{
    for (std::size_t a = sizes_.size(); a-- > 0;) {
        int i = static_cast<int>(flat % sizes_[a]);
        flat /= sizes_[a];
        x[a] = node(static_cast<int>(a), i);
    }
}

bool Grid::same_shape(const Grid& other) const
{
    return periodic_ == other.periodic_ && sizes_ == other.sizes_ && lower_ == other.lower_ && upper_ == other.upper_;
}

GridField::GridField(Grid g, int d) : grid(std::move(g)), components(d)
{
    if (d < 1)
        throw InvalidArgument("field needs at least one component");
    data.assign(grid.count() * d, 0.0);
}

GridField::GridField(Grid g, int d, std::vector<double> values) : grid(std::move(g)), components(d), data(std::move(values))
{
    if (d < 1)
        throw InvalidArgument("field needs at least one component");
    if (data.size() != grid.count() * d)
        throw ShapeError("field data length " + std::to_string(data.size()) + " does not match grid (" +
                         std::to_string(grid.count() * d) + ")");
}

TwoScaleField::TwoScaleField(Grid x, Grid y, int d) : xgrid(std::move(x)), ygrid(std::move(y)), components(d)
{
    if (d < 1)
        throw InvalidArgument("field needs at least one component");
    if (!ygrid.is_periodic())
        throw InvalidArgument("two-scale field needs a periodic y-grid");
    data.assign(xgrid.count() * ygrid.count() * d, 0.0);
}

double TwoScaleField::max_y_mean() const
{
    const std::size_t ny = ygrid.count();
    double worst = 0.0;
    std::vector<double> mean(components);
    for (std::size_t x = 0; x < xgrid.count(); ++x) {
        std::fill(mean.begin(), mean.end(), 0.0);
        const double* s = slice(x);
        for (std::size_t y = 0; y < ny; ++y)
            for (int c = 0; c < components; ++c)
                mean[c] += s[y * components + c];
        for (int c = 0; c < components; ++c)
            worst = std::max(worst, std::abs(mean[c] / static_cast<double>(ny)));
    }
    return worst;
}

TwoScaleField broadcast(const GridField& u, const Grid& ygrid)
{
    TwoScaleField w(u.grid, ygrid, u.components);
    const std::size_t ny = ygrid.count();
    for (std::size_t x = 0; x < u.nodes(); ++x) {
        double* s = w.slice(x);
        for (std::size_t y = 0; y < ny; ++y)
            for (int c = 0; c < u.components; ++c)
                s[y * u.components + c] = u.at(x, c);
    }
    return w;
}

double dot(std::span<const double> a, std::span<const double> b)
{
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double norm2(std::span<const double> a)
{
    return std::sqrt(dot(a, a));
}

double inner(const TwoScaleField& a, const TwoScaleField& b)
{
    check_same_shape(a, b, "inner");
    return dot(a.data, b.data) * a.xgrid.cell_volume() * a.ygrid.cell_volume();
}

double l2_norm(const TwoScaleField& w)
{
    return std::sqrt(inner(w, w));
}

void check_same_shape(const TwoScaleField& a, const TwoScaleField& b, const char* what)
{
    if (!a.xgrid.same_shape(b.xgrid) || !a.ygrid.same_shape(b.ygrid) || a.components != b.components)
        throw ShapeError(std::string(what) + ": two-scale fields have different shapes");
}

}  // namespace homoglab
