#include "pflab/ops.hpp"

#include <cmath>
#include <cstdio>

namespace pflab {

namespace {

std::string bad_node_message(const ScalarField& u, const char* op) {
    std::size_t i = u.first_bad();
    auto idx = u.grid.unindex(i);
    auto x = u.grid.coords(idx);
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s: non-finite input at node (%d,%d,%d), x=(%g,%g,%g)", op,
                  idx[0], idx[1], idx[2], x[0], x[1], x[2]);
    return buf;
}

struct Strides {
    std::array<std::size_t, 3> s{0, 0, 0};
    explicit Strides(const GridSpec& g) {
        std::size_t acc = 1;
        for (int a = g.dim - 1; a >= 0; --a) {
            s[a] = acc;
            acc *= static_cast<std::size_t>(g.nodes(a));
        }
    }
};

// Value of u at the node shifted by dir (+1/-1) along axis a from flat index
// `flat` whose axis-a index is ia. Applies the ghost policy at the ends.
inline double shifted_value(const double* u, const GridSpec& g, const Strides& st,
                            std::size_t flat, int a, int ia, int dir) {
    const int n = g.nodes(a);
    if (dir < 0) {
        if (ia > 0) return u[flat - st.s[a]];
        switch (g.bc[a].kind) {
        case BcKind::Neumann: return u[flat + st.s[a]];
        case BcKind::Dirichlet: return g.bc[a].value;
        case BcKind::Periodic: return u[flat + static_cast<std::size_t>(n - 1) * st.s[a]];
        }
    } else {
        if (ia < n - 1) return u[flat + st.s[a]];
        switch (g.bc[a].kind) {
        case BcKind::Neumann: return u[flat - st.s[a]];
        case BcKind::Dirichlet: return g.bc[a].value;
        case BcKind::Periodic: return u[flat - static_cast<std::size_t>(n - 1) * st.s[a]];
        }
    }
    return 0.0;
}

// Applies fn(flat, ix, iy, iz) over all nodes, parallel over the outer axis.
template <class Fn> void for_nodes(const GridSpec& g, Fn&& fn) {
    const int n0 = g.nodes(0);
    const int n1 = g.dim > 1 ? g.nodes(1) : 1;
    const int n2 = g.dim > 2 ? g.nodes(2) : 1;
    parallel_for(static_cast<std::size_t>(n0), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t ix = lo; ix < hi; ++ix) {
            std::size_t flat = ix * static_cast<std::size_t>(n1) * n2;
            for (int iy = 0; iy < n1; ++iy)
                for (int iz = 0; iz < n2; ++iz, ++flat)
                    fn(flat, static_cast<int>(ix), iy, iz);
        }
    });
}

} // namespace

ScalarField laplacian(const ScalarField& u) {
    if (!u.all_finite()) throw Error(bad_node_message(u, "laplacian"));
    const GridSpec& g = u.grid;
    Strides st(g);
    ScalarField out(g);
    const double* uv = u.values.data();
    std::array<double, 3> ih2{};
    for (int a = 0; a < g.dim; ++a) ih2[a] = 1.0 / (g.spacing[a] * g.spacing[a]);
    for_nodes(g, [&](std::size_t flat, int ix, int iy, int iz) {
        const int ia[3] = {ix, iy, iz};
        double acc = 0.0;
        const double c = uv[flat];
        for (int a = 0; a < g.dim; ++a) {
            double l = shifted_value(uv, g, st, flat, a, ia[a], -1);
            double r = shifted_value(uv, g, st, flat, a, ia[a], +1);
            acc += (l - 2.0 * c + r) * ih2[a];
        }
        out[flat] = acc;
    });
    return out;
}

VectorField gradient(const ScalarField& u) {
    if (!u.all_finite()) throw Error(bad_node_message(u, "gradient"));
    const GridSpec& g = u.grid;
    Strides st(g);
    VectorField out(g);
    const double* uv = u.values.data();
    std::array<double, 3> i2h{};
    for (int a = 0; a < g.dim; ++a) i2h[a] = 0.5 / g.spacing[a];
    for_nodes(g, [&](std::size_t flat, int ix, int iy, int iz) {
        const int ia[3] = {ix, iy, iz};
        for (int a = 0; a < g.dim; ++a) {
            double l = shifted_value(uv, g, st, flat, a, ia[a], -1);
            double r = shifted_value(uv, g, st, flat, a, ia[a], +1);
            out[a][flat] = (r - l) * i2h[a];
        }
    });
    return out;
}

ScalarField gradient_transpose(const VectorField& G) {
    const GridSpec& g = G.grid;
    Strides st(g);
    ScalarField out(g);
    std::array<const double*, 3> gv{};
    for (int a = 0; a < g.dim; ++a) gv[a] = G[a].values.data();
    std::array<double, 3> i2h{};
    for (int a = 0; a < g.dim; ++a) i2h[a] = 0.5 / g.spacing[a];

    // Whether the gradient row at axis index ia references its right/left
    // neighbour (Neumann boundary rows are identically zero).
    auto refs_right = [&](int a, int ia) {
        const int n = g.nodes(a);
        if (g.bc[a].kind == BcKind::Periodic) return true;
        return (ia > 0 && ia < n - 1) || (ia == 0 && g.bc[a].kind == BcKind::Dirichlet);
    };
    auto refs_left = [&](int a, int ia) {
        const int n = g.nodes(a);
        if (g.bc[a].kind == BcKind::Periodic) return true;
        return (ia > 0 && ia < n - 1) || (ia == n - 1 && g.bc[a].kind == BcKind::Dirichlet);
    };

    for_nodes(g, [&](std::size_t flat, int ix, int iy, int iz) {
        const int ja[3] = {ix, iy, iz};
        double acc = 0.0;
        for (int a = 0; a < g.dim; ++a) {
            const int n = g.nodes(a);
            // contribution from the row at j - e_a (references us with +1/2h)
            if (ja[a] > 0) {
                if (refs_right(a, ja[a] - 1)) acc += gv[a][flat - st.s[a]] * i2h[a];
            } else if (g.bc[a].kind == BcKind::Periodic) {
                acc += gv[a][flat + static_cast<std::size_t>(n - 1) * st.s[a]] * i2h[a];
            }
            // contribution from the row at j + e_a (references us with -1/2h)
            if (ja[a] < n - 1) {
                if (refs_left(a, ja[a] + 1)) acc -= gv[a][flat + st.s[a]] * i2h[a];
            } else if (g.bc[a].kind == BcKind::Periodic) {
                acc -= gv[a][flat - static_cast<std::size_t>(n - 1) * st.s[a]] * i2h[a];
            }
        }
        out[flat] = acc;
    });
    return out;
}

namespace {
// Node weight as a function of the flat index (pure, so deterministic).
struct WeightFn {
    const GridSpec& g;
    double operator()(std::size_t i) const { return g.node_weight(g.unindex(i)); }
};
} // namespace

double integrate(const ScalarField& f) {
    WeightFn w{f.grid};
    return block_sum_fn(f.size(), [&](std::size_t i) { return w(i) * f[i]; });
}

double inner_product(const ScalarField& f, const ScalarField& g) {
    require(f.grid.same_layout(g.grid), "inner_product: grid mismatch");
    WeightFn w{f.grid};
    return block_sum_fn(f.size(), [&](std::size_t i) { return w(i) * f[i] * g[i]; });
}

double lp_norm(const ScalarField& f, double p) {
    WeightFn w{f.grid};
    double s = block_sum_fn(f.size(), [&](std::size_t i) { return w(i) * std::pow(std::abs(f[i]), p); });
    return std::pow(s, 1.0 / p);
}

double l2_norm(const ScalarField& f) {
    WeightFn w{f.grid};
    double s = block_sum_fn(f.size(), [&](std::size_t i) { return w(i) * f[i] * f[i]; });
    return std::sqrt(s);
}

double dot(const ScalarField& a, const ScalarField& b) {
    require(a.size() == b.size(), "dot: size mismatch");
    return block_sum_fn(a.size(), [&](std::size_t i) { return a[i] * b[i]; });
}

} // namespace pflab
