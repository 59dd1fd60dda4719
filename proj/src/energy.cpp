#include "pflab/energy.hpp"

#include <cmath>

#include "pflab/ops.hpp"

namespace pflab {

ScalarField weights_field(const GridSpec& g) {
    ScalarField w(g);
    parallel_for(w.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) w[i] = g.node_weight(g.unindex(i));
    });
    return w;
}

ScalarField energy_density(const ScalarField& u, double eps, const DoubleWell& well) {
    VectorField g = gradient(u);
    ScalarField out(u.grid);
    const int dim = u.grid.dim;
    parallel_for(u.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            double g2 = 0.0;
            for (int a = 0; a < dim; ++a) g2 += g[a][i] * g[a][i];
            out[i] = 0.5 * eps * g2 + well.W(u[i]) / eps;
        }
    });
    return out;
}

double weighted_energy(const ScalarField& u, double eps, const DoubleWell& well,
                       const ScalarField* rho) {
    ScalarField e = energy_density(u, eps, well);
    if (!rho) return integrate(e);
    ScalarField weighted(u.grid);
    parallel_for(u.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) weighted[i] = e[i] * std::exp((*rho)[i]);
    });
    double val = integrate(weighted);
    require(std::isfinite(val), "weighted_energy: non-finite value");
    return val;
}

double weighted_energy(const PhaseState& s) {
    return weighted_energy(s.u, s.epsilon, s.well, s.rho ? &*s.rho : nullptr);
}

ScalarField energy_gradient(const ScalarField& u, double eps, const DoubleWell& well,
                            const ScalarField* rho) {
    const GridSpec& g = u.grid;
    ScalarField w = weights_field(g);
    VectorField gu = gradient(u);
    // G_a = w * exp(rho) * (grad u)_a
    VectorField G(g);
    parallel_for(u.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            double f = w[i] * (rho ? std::exp((*rho)[i]) : 1.0);
            for (int a = 0; a < g.dim; ++a) G[a][i] = f * gu[a][i];
        }
    });
    ScalarField T = gradient_transpose(G);
    ScalarField R(g);
    parallel_for(u.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            double er = rho ? std::exp((*rho)[i]) : 1.0;
            R[i] = eps * T[i] / w[i] + er * well.Wp(u[i]) / eps;
        }
    });
    return R;
}

} // namespace pflab
