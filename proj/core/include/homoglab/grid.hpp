#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace homoglab {

// Uniform cell-centered grid on an axis-aligned box. The periodic cell
// Q = (-1/2, 1/2)^N is the special case produced by Grid::periodic.
// Node i on axis j sits at lower_j + (i + 1/2) * h_j.
class Grid {
public:
    Grid() = default;

    static Grid periodic(std::vector<int> sizes);
    static Grid box(std::vector<double> lower, std::vector<double> upper, std::vector<int> sizes);
    static Grid unit_box(int dims, int size);

    bool is_periodic() const noexcept { return periodic_; }
    int dims() const noexcept { return static_cast<int>(sizes_.size()); }
    const std::vector<int>& sizes() const noexcept { return sizes_; }
    int size(int axis) const { return sizes_[axis]; }
    const std::vector<double>& lower() const noexcept { return lower_; }
    const std::vector<double>& upper() const noexcept { return upper_; }

    std::size_t count() const noexcept { return count_; }
    double length(int axis) const { return upper_[axis] - lower_[axis]; }
    double spacing(int axis) const { return length(axis) / sizes_[axis]; }
    double node(int axis, int i) const { return lower_[axis] + (i + 0.5) * spacing(axis); }
    double cell_volume() const noexcept { return cell_volume_; }
    double volume() const noexcept { return cell_volume_ * static_cast<double>(count_); }

    // Row-major flat index, axis 0 slowest.
    std::size_t flat(std::span<const int> idx) const;
    void unflat(std::size_t flat, std::span<int> idx) const;
    void coordinates(std::size_t flat, std::span<double> x) const;

    bool same_shape(const Grid& other) const;

private:
    Grid(bool periodic, std::vector<double> lower, std::vector<double> upper, std::vector<int> sizes);

    bool periodic_ = false;
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::vector<int> sizes_;
    std::size_t count_ = 0;
    double cell_volume_ = 0.0;
};

// d-component field sampled on a Grid, data indexed [node][component].
struct GridField {
    Grid grid;
    int components = 1;
    std::vector<double> data;

    GridField() = default;
    GridField(Grid g, int d);
    GridField(Grid g, int d, std::vector<double> values);

    std::size_t nodes() const noexcept { return grid.count(); }
    double& at(std::size_t node, int c) { return data[node * components + c]; }
    double at(std::size_t node, int c) const { return data[node * components + c]; }
    std::span<double> node_values(std::size_t node) { return {data.data() + node * components, static_cast<std::size_t>(components)}; }
    std::span<const double> node_values(std::size_t node) const
    {
        return {data.data() + node * components, static_cast<std::size_t>(components)};
    }
};

// Field w(x, y) on xgrid x ygrid, data indexed [x-node][y-node][component].
struct TwoScaleField {
    Grid xgrid;
    Grid ygrid;
    int components = 1;
    std::vector<double> data;

    TwoScaleField() = default;
    TwoScaleField(Grid x, Grid y, int d);

    std::size_t slice_size() const noexcept { return ygrid.count() * static_cast<std::size_t>(components); }
    double* slice(std::size_t xnode) { return data.data() + xnode * slice_size(); }
    const double* slice(std::size_t xnode) const { return data.data() + xnode * slice_size(); }
    double& at(std::size_t xnode, std::size_t ynode, int c)
    {
        return data[xnode * slice_size() + ynode * components + c];
    }
    double at(std::size_t xnode, std::size_t ynode, int c) const
    {
        return data[xnode * slice_size() + ynode * components + c];
    }

    // max over x of |integral_Q w(x, y) dy|; the zero_y_mean invariant holds when this is below tolerance.
    double max_y_mean() const;
};

// Broadcast a field of x to a two-scale field constant in y.
TwoScaleField broadcast(const GridField& u, const Grid& ygrid);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);

// L2(Omega x Q) norm and inner product of two-scale fields.
double l2_norm(const TwoScaleField& w);
double inner(const TwoScaleField& a, const TwoScaleField& b);

void check_same_shape(const TwoScaleField& a, const TwoScaleField& b, const char* what);

}  // namespace homoglab
