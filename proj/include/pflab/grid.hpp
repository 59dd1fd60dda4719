// grid.hpp
// Uniform Cartesian grids in 1/2/3 dimensions with per-axis boundary
// conditions. Fields are node-indexed; a non-periodic axis with `extent`
// cells carries extent+1 nodes (both endpoints), a periodic axis carries
// `extent` nodes (the wrap node is identified with the first).

#ifndef PFLAB_GRID_HPP
#define PFLAB_GRID_HPP

#include <array>
#include <cstddef>
#include <string>

#include "pflab/error.hpp"

namespace pflab {

enum class BcKind { Neumann, Dirichlet, Periodic };

struct AxisBc {
    BcKind kind = BcKind::Neumann;
    double value = 0.0; // Dirichlet ghost value

    static AxisBc neumann() { return {BcKind::Neumann, 0.0}; }
    static AxisBc dirichlet(double v) { return {BcKind::Dirichlet, v}; }
    static AxisBc periodic() { return {BcKind::Periodic, 0.0}; }
};

struct GridSpec {
    int dim = 1;
    std::array<int, 3> extents{4, 1, 1};    // cells per axis
    std::array<double, 3> spacing{1, 1, 1}; // cell width per axis
    std::array<double, 3> origin{0, 0, 0};  // coordinates of node (0,...,0)
    std::array<AxisBc, 3> bc{};

    GridSpec() = default;
    GridSpec(int dim_, std::array<int, 3> ext, std::array<double, 3> h,
             std::array<double, 3> org, std::array<AxisBc, 3> b)
        : dim(dim_), extents(ext), spacing(h), origin(org), bc(b) {
        validate();
    }

    void validate() const;

    int nodes(int axis) const {
        return bc[axis].kind == BcKind::Periodic ? extents[axis] : extents[axis] + 1;
    }
    std::size_t node_count() const {
        std::size_t n = 1;
        for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(nodes(a));
        return n;
    }
    double length(int axis) const { return extents[axis] * spacing[axis]; }
    double lo(int axis) const { return origin[axis]; }
    double hi(int axis) const { return origin[axis] + length(axis); }

    // Row-major with the last axis fastest.
    std::size_t index(std::array<int, 3> i) const {
        std::size_t idx = 0;
        for (int a = 0; a < dim; ++a) idx = idx * nodes(a) + static_cast<std::size_t>(i[a]);
        return idx;
    }
    std::array<int, 3> unindex(std::size_t idx) const {
        std::array<int, 3> i{0, 0, 0};
        for (int a = dim - 1; a >= 0; --a) {
            i[a] = static_cast<int>(idx % nodes(a));
            idx /= nodes(a);
        }
        return i;
    }
    std::array<double, 3> coords(std::array<int, 3> i) const {
        std::array<double, 3> x{0, 0, 0};
        for (int a = 0; a < dim; ++a) x[a] = origin[a] + i[a] * spacing[a];
        return x;
    }

    // Trapezoidal node weight per axis (h/2 at non-periodic endpoints, h
    // otherwise); the tensor product integrates exactly over Omega and makes
    // the reflected-ghost Laplacian self-adjoint.
    double axis_weight(int axis, int i) const {
        if (bc[axis].kind == BcKind::Periodic) return spacing[axis];
        return (i == 0 || i == extents[axis]) ? 0.5 * spacing[axis] : spacing[axis];
    }
    double node_weight(std::array<int, 3> i) const {
        double w = 1.0;
        for (int a = 0; a < dim; ++a) w *= axis_weight(a, i[a]);
        return w;
    }

    bool same_layout(const GridSpec& o) const;

    // Convenience factories.
    static GridSpec line(int cells, double x0, double x1, AxisBc b = AxisBc::neumann());
    static GridSpec square(int cells, double x0, double x1, AxisBc b = AxisBc::neumann());
    static GridSpec box3(int cells, double x0, double x1, AxisBc b = AxisBc::neumann());
};

std::string bc_code(const AxisBc& b);
AxisBc parse_bc_code(const std::string& s);

} // namespace pflab

#endif
