#include "pflab/field.hpp"

#include <algorithm>

namespace pflab {

ScalarField sample(const GridSpec& g, const std::function<double(std::array<double, 3>)>& f) {
    ScalarField out(g);
    const std::size_t n = out.size();
    parallel_for(n, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) out[i] = f(g.coords(g.unindex(i)));
    });
    return out;
}

VectorField sample_vector(const GridSpec& g,
                          const std::function<std::array<double, 3>(std::array<double, 3>)>& f) {
    VectorField out(g);
    const std::size_t n = g.node_count();
    parallel_for(n, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            auto v = f(g.coords(g.unindex(i)));
            for (int a = 0; a < g.dim; ++a) out[a][i] = v[a];
        }
    });
    return out;
}

namespace {
void check_match(const ScalarField& a, const ScalarField& b) {
    require(a.grid.same_layout(b.grid), "field arithmetic: grid mismatch");
}
} // namespace

ScalarField add(const ScalarField& a, const ScalarField& b) {
    check_match(a, b);
    ScalarField out(a.grid);
    parallel_for(a.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) out[i] = a[i] + b[i];
    });
    return out;
}

ScalarField sub(const ScalarField& a, const ScalarField& b) {
    check_match(a, b);
    ScalarField out(a.grid);
    parallel_for(a.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) out[i] = a[i] - b[i];
    });
    return out;
}

ScalarField scale(const ScalarField& a, double c) {
    ScalarField out(a.grid);
    parallel_for(a.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) out[i] = c * a[i];
    });
    return out;
}

ScalarField multiply(const ScalarField& a, const ScalarField& b) {
    check_match(a, b);
    ScalarField out(a.grid);
    parallel_for(a.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) out[i] = a[i] * b[i];
    });
    return out;
}

void axpy(double c, const ScalarField& x, ScalarField& y) {
    check_match(x, y);
    parallel_for(x.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) y[i] += c * x[i];
    });
}

ScalarField map(const ScalarField& a, const std::function<double(double)>& f) {
    ScalarField out(a.grid);
    parallel_for(a.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) out[i] = f(a[i]);
    });
    return out;
}

double sup_norm(const ScalarField& a) {
    double m = 0.0;
    for (double v : a.values) m = std::max(m, std::abs(v));
    return m;
}

double min_value(const ScalarField& a) {
    return *std::min_element(a.values.begin(), a.values.end());
}

double max_value(const ScalarField& a) {
    return *std::max_element(a.values.begin(), a.values.end());
}

double interpolate(const ScalarField& f, std::array<double, 3> x) {
    const GridSpec& g = f.grid;
    std::array<int, 3> i0{0, 0, 0};
    std::array<double, 3> t{0, 0, 0};
    for (int a = 0; a < g.dim; ++a) {
        double s = (x[a] - g.origin[a]) / g.spacing[a];
        if (g.bc[a].kind == BcKind::Periodic) {
            double n = g.extents[a];
            s = s - n * std::floor(s / n);
        } else {
            s = std::clamp(s, 0.0, static_cast<double>(g.extents[a]));
        }
        int i = std::min(static_cast<int>(s), g.extents[a] - 1);
        i0[a] = i;
        t[a] = s - i;
    }
    double out = 0.0;
    const int corners = 1 << g.dim;
    for (int c = 0; c < corners; ++c) {
        double wgt = 1.0;
        std::array<int, 3> idx = i0;
        for (int a = 0; a < g.dim; ++a) {
            if (c & (1 << a)) {
                wgt *= t[a];
                idx[a] = i0[a] + 1;
                if (g.bc[a].kind == BcKind::Periodic && idx[a] == g.nodes(a)) idx[a] = 0;
            } else {
                wgt *= 1.0 - t[a];
            }
        }
        out += wgt * f[g.index(idx)];
    }
    return out;
}

} // namespace pflab
