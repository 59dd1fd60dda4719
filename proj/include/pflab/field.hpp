// field.hpp
// Node-indexed scalar and vector fields. Fields are plain values: all
// operations elsewhere return new fields and never mutate their inputs.

#ifndef PFLAB_FIELD_HPP
#define PFLAB_FIELD_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "pflab/grid.hpp"
#include "pflab/parallel.hpp"

namespace pflab {

struct ScalarField {
    GridSpec grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(const GridSpec& g, double fill = 0.0)
        : grid(g), values(g.node_count(), fill) {}

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }

    bool all_finite() const {
        for (double v : values)
            if (!std::isfinite(v)) return false;
        return true;
    }
    // Index of the first non-finite value, or size() if none.
    std::size_t first_bad() const {
        for (std::size_t i = 0; i < values.size(); ++i)
            if (!std::isfinite(values[i])) return i;
        return values.size();
    }
};

struct VectorField {
    GridSpec grid;
    std::vector<ScalarField> comps; // grid.dim components

    VectorField() = default;
    explicit VectorField(const GridSpec& g) : grid(g) {
        comps.assign(g.dim, ScalarField(g));
    }

    ScalarField& operator[](int a) { return comps[a]; }
    const ScalarField& operator[](int a) const { return comps[a]; }
    bool all_finite() const {
        for (const auto& c : comps)
            if (!c.all_finite()) return false;
        return true;
    }
};

// Samples f(x) at every node.
ScalarField sample(const GridSpec& g, const std::function<double(std::array<double, 3>)>& f);
VectorField sample_vector(const GridSpec& g,
                          const std::function<std::array<double, 3>(std::array<double, 3>)>& f);

// Elementwise arithmetic (matching grids required).
ScalarField add(const ScalarField& a, const ScalarField& b);
ScalarField sub(const ScalarField& a, const ScalarField& b);
ScalarField scale(const ScalarField& a, double c);
ScalarField multiply(const ScalarField& a, const ScalarField& b);
// y += c*x in place (the one mutating helper, used by iterative solvers).
void axpy(double c, const ScalarField& x, ScalarField& y);

ScalarField map(const ScalarField& a, const std::function<double(double)>& f);

double sup_norm(const ScalarField& a);
double min_value(const ScalarField& a);
double max_value(const ScalarField& a);

// Multilinear interpolation of node values at a physical point (clamped to
// the domain box; periodic axes wrap).
double interpolate(const ScalarField& f, std::array<double, 3> x);

} // namespace pflab

#endif
