#include "pflab/minmax.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pflab/krylov.hpp"
#include "pflab/ops.hpp"

namespace pflab {

PathSeeding parse_seeding(const std::string& name) {
    if (name == "linear") return PathSeeding::Linear;
    if (name == "sweep") return PathSeeding::Sweep;
    if (name == "radial") return PathSeeding::Radial;
    throw Error("path_seeding must be linear, sweep or radial; got " + name);
}

void PathOfStates::validate() const {
    require(segments() >= 16, "path: need at least 16 segments");
    for (double x : nodes.front().values) require(x == -1.0, "path: node 0 must be exactly -1");
    for (double x : nodes.back().values) require(x == 1.0, "path: last node must be exactly +1");
    require(epsilon > 0.0, "path: epsilon must be positive");
}

PhaseState PathOfStates::state_at(int k) const {
    if (rho) return PhaseState::with_potential(nodes[k], epsilon, well, *rho);
    return PhaseState::quiescent(nodes[k], epsilon, well);
}

PathOfStates init_path(const GridSpec& grid, int m, PathSeeding seeding, double eps,
                       const DoubleWell& well, std::optional<ScalarField> rho) {
    require(m >= 16, "init_path: need m >= 16");
    PathOfStates p;
    p.grid = grid;
    p.epsilon = eps;
    p.well = well;
    p.rho = std::move(rho);
    p.nodes.reserve(m + 1);
    p.nodes.push_back(ScalarField(grid, -1.0));

    const double k2 = std::sqrt(2.0) / eps;
    if (seeding == PathSeeding::Linear) {
        for (int k = 1; k < m; ++k) p.nodes.push_back(ScalarField(grid, -1.0 + 2.0 * k / m));
    } else if (seeding == PathSeeding::Sweep) {
        // kink swept along the first axis; c decreasing so node 1 is near -1
        const double pad = 6.0 * eps;
        const double c_hi = grid.hi(0) + pad, c_lo = grid.lo(0) - pad;
        for (int k = 1; k < m; ++k) {
            double c = c_hi + (c_lo - c_hi) * (k - 1) / static_cast<double>(m - 2);
            p.nodes.push_back(sample(grid, [&](std::array<double, 3> x) {
                return std::tanh(k2 * (x[0] - c));
            }));
        }
    } else {
        // circular kink swept in |x - center|
        std::array<double, 3> ctr{0, 0, 0};
        double corner = 0.0;
        for (int a = 0; a < grid.dim; ++a) {
            ctr[a] = 0.5 * (grid.lo(a) + grid.hi(a));
            double half = 0.5 * grid.length(a);
            corner += half * half;
        }
        const double pad = 6.0 * eps;
        const double c_hi = std::sqrt(corner) + pad, c_lo = -pad;
        for (int k = 1; k < m; ++k) {
            double c = c_hi + (c_lo - c_hi) * (k - 1) / static_cast<double>(m - 2);
            p.nodes.push_back(sample(grid, [&](std::array<double, 3> x) {
                double r2 = 0.0;
                for (int a = 0; a < grid.dim; ++a) r2 += (x[a] - ctr[a]) * (x[a] - ctr[a]);
                return std::tanh(k2 * (std::sqrt(r2) - c));
            }));
        }
    }
    p.nodes.push_back(ScalarField(grid, 1.0));
    p.validate();
    return p;
}

namespace {

// exp(rho)-weighted L2 distance between path nodes
double path_metric(const ScalarField& a, const ScalarField& b, const ScalarField* erho,
                   const ScalarField& w) {
    double s = block_sum_fn(a.size(), [&](std::size_t i) {
        double d = a[i] - b[i];
        double f = erho ? (*erho)[i] : 1.0;
        return w[i] * f * d * d;
    });
    return std::sqrt(s);
}

} // namespace

std::pair<PathOfStates, MountainPassReport> relax_path(const PathOfStates& path0, int sweeps,
                                                       RelaxOptions opts) {
    require(sweeps >= 1, "relax_path: sweeps must be >= 1");
    PathOfStates path = path0;
    path.validate();
    const int m = path.segments();
    const double eps = path.epsilon;
    const DoubleWell& well = path.well;
    const ScalarField* rho = path.rho ? &*path.rho : nullptr;

    ScalarField w = weights_field(path.grid);
    std::optional<ScalarField> erho;
    if (rho) erho = map(*rho, [](double r) { return std::exp(r); });

    // stabilization for the preconditioner: max W'' over [-1.05, 1.05]
    double S = well.kappa;
    for (int i = 0; i <= 2000; ++i) S = std::max(S, well.Wpp(-1.05 + 2.1 * i / 2000.0));

    auto energy_of = [&](const ScalarField& u) { return weighted_energy(u, eps, well, rho); };

    MountainPassReport rep;
    double tau = opts.cfl * eps;

    auto precond = [&](const ScalarField& b, double tau_) {
        auto Aop = [&](const ScalarField& x) {
            ScalarField lap = laplacian(x);
            ScalarField out(x.grid);
            parallel_for(out.size(), [&](std::size_t lo, std::size_t hi) {
                for (std::size_t i = lo; i < hi; ++i)
                    out[i] = x[i] - tau_ * eps * lap[i] + tau_ * S / eps * x[i];
            });
            return out;
        };
        return cg(Aop, b, ScalarField(b.grid, 0.0), 1e-10, 400).x;
    };

    std::vector<double> F(m + 1);
    for (int k = 0; k <= m; ++k) F[k] = energy_of(path.nodes[k]);
    double prev_max = *std::max_element(F.begin(), F.end());
    PathOfStates best = path;
    double best_max = prev_max;
    int backtracks = 0;

    for (int sweep = 0; sweep < std::min(sweeps, opts.max_sweeps); ++sweep) {
        PathOfStates trial = path;
        std::vector<double> Ft = F;

        // one descent step per interior node (independent; parallel-safe,
        // but each node's CG already runs data-parallel so keep this serial)
        for (int k = 1; k < m; ++k) {
            ScalarField R = energy_gradient(trial.nodes[k], eps, well, rho);
            if (erho) {
                parallel_for(R.size(), [&](std::size_t lo, std::size_t hi) {
                    for (std::size_t i = lo; i < hi; ++i) R[i] /= (*erho)[i];
                });
            }
            ScalarField dir = precond(scale(R, -tau), tau);
            double step = 1.0;
            for (int bt = 0; bt < 8; ++bt) {
                ScalarField cand = trial.nodes[k];
                axpy(step, dir, cand);
                if (cand.all_finite() && sup_norm(cand) <= 1.5) {
                    double Fc = energy_of(cand);
                    if (Fc <= Ft[k] + 1e-12 * std::abs(Ft[k])) {
                        trial.nodes[k] = std::move(cand);
                        Ft[k] = Fc;
                        break;
                    }
                }
                step *= 0.5;
            }
        }

        // reparametrize to equal arclength in the weighted metric
        std::vector<double> cum(m + 1, 0.0);
        for (int k = 0; k < m; ++k)
            cum[k + 1] = cum[k] + path_metric(trial.nodes[k + 1], trial.nodes[k],
                                              erho ? &*erho : nullptr, w);
        PathOfStates repar = trial;
        for (int k = 1; k < m; ++k) {
            double target = cum[m] * k / m;
            int j = static_cast<int>(std::upper_bound(cum.begin(), cum.end(), target) -
                                     cum.begin()) - 1;
            j = std::clamp(j, 0, m - 1);
            double seg = cum[j + 1] - cum[j];
            double t = seg > 0.0 ? (target - cum[j]) / seg : 0.0;
            ScalarField node = scale(trial.nodes[j], 1.0 - t);
            axpy(t, trial.nodes[j + 1], node);
            repar.nodes[k] = std::move(node);
        }
        std::vector<double> Fr(m + 1);
        for (int k = 0; k <= m; ++k) Fr[k] = energy_of(repar.nodes[k]);
        double new_max = *std::max_element(Fr.begin(), Fr.end());

        if (new_max > prev_max * (1.0 + 1e-10) + 1e-14) {
            // history must not increase: retry the sweep with a smaller step
            ++backtracks;
            tau *= 0.5;
            --sweep;
            if (backtracks > opts.backtrack_limit) {
                rep.converged = false;
                rep.minmax_value = best_max;
                rep.sweeps_done = static_cast<int>(rep.history.size());
                return {std::move(best), std::move(rep)};
            }
            continue;
        }

        path = std::move(repar);
        F = std::move(Fr);
        prev_max = new_max;
        rep.history.push_back(new_max);
        if (new_max < best_max) {
            best = path;
            best_max = new_max;
        }
        const int lag = 10;
        int hs = static_cast<int>(rep.history.size());
        if (hs > lag) {
            double then = rep.history[hs - 1 - lag];
            if (std::abs(then - new_max) < opts.rel_change * std::abs(new_max)) break;
        }
    }
    rep.sweeps_done = static_cast<int>(rep.history.size());
    rep.minmax_value = prev_max;
    rep.converged = true;
    return {std::move(path), std::move(rep)};
}

std::pair<PhaseState, SolveReport> refine_saddle(const PathOfStates& path, double tol,
                                                 SolverOptions opts) {
    int kmax = 0;
    double Fmax = -1e300;
    const ScalarField* rho = path.rho ? &*path.rho : nullptr;
    for (int k = 0; k <= path.segments(); ++k) {
        double F = weighted_energy(path.nodes[k], path.epsilon, path.well, rho);
        if (F > Fmax) {
            Fmax = F;
            kmax = k;
        }
    }
    PhaseState s = path.state_at(kmax);
    opts.tol = tol;
    return newton_refine(s, opts); // fixed-eps Newton from the max node
}

ProbeReport morse_probe(const PhaseState& s, int count, unsigned long seed, int iters) {
    ProbeReport rep;
    ScalarField w = weights_field(s.grid);
    std::optional<ScalarField> erho;
    if (s.rho) erho = map(*s.rho, [](double r) { return std::exp(r); });

    auto wdot = [&](const ScalarField& a, const ScalarField& b) {
        return block_sum_fn(a.size(), [&](std::size_t i) {
            double f = erho ? (*erho)[i] : 1.0;
            return w[i] * f * a[i] * b[i];
        });
    };

    std::mt19937_64 rng(seed);
    auto uniform = [&]() {
        return (static_cast<double>(rng() >> 11) + 0.5) / 9007199254740992.0; // (0,1)
    };

    std::vector<ScalarField> descent;
    for (int pidx = 0; pidx < count; ++pidx) {
        ScalarField x(s.grid);
        for (auto& val : x.values) {
            // Box-Muller, fixed formula for reproducibility across platforms
            double u1 = uniform(), u2 = uniform();
            val = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
        }
        double nx = std::sqrt(wdot(x, x));
        x = scale(x, 1.0 / nx);
        double q = 0.0;
        for (int it = 0; it < iters; ++it) {
            ScalarField Jx = jacobian_apply(s, x);
            q = wdot(Jx, x);
            ScalarField g = Jx;
            axpy(-q, x, g);
            double gn = std::sqrt(wdot(g, g));
            if (gn < 1e-11 * std::max(1.0, std::abs(q))) break;
            // minimize the quotient on span{x, g} (2x2 generalized eigenproblem)
            ScalarField Jg = jacobian_apply(s, g);
            double a11 = q, a12 = wdot(Jg, x), a21 = wdot(Jx, g), a22 = wdot(Jg, g);
            double A12 = 0.5 * (a12 + a21);
            double b11 = 1.0, b12 = wdot(x, g), b22 = wdot(g, g);
            // solve det(A - t B) = 0 for the smaller root
            double pa = b11 * b22 - b12 * b12;
            double pb = -(a11 * b22 + a22 * b11 - 2.0 * A12 * b12);
            double pc = a11 * a22 - A12 * A12;
            double disc = std::max(pb * pb - 4.0 * pa * pc, 0.0);
            double t = (-pb - std::sqrt(disc)) / (2.0 * pa);
            // eigenvector of (A - t B)
            double m11 = a11 - t * b11, m12 = A12 - t * b12;
            double c1, c2;
            if (std::abs(m12) > std::abs(m11)) {
                c1 = 1.0;
                c2 = -m11 / m12;
            } else if (m11 != 0.0) {
                c1 = -m12 / m11;
                c2 = 1.0;
            } else {
                c1 = 1.0;
                c2 = 0.0;
            }
            ScalarField xn = scale(x, c1);
            axpy(c2, g, xn);
            double nn = std::sqrt(wdot(xn, xn));
            if (nn == 0.0) break;
            x = scale(xn, 1.0 / nn);
        }
        rep.quotients.push_back(q);
        if (q < 0.0) {
            ++rep.negative_quotients;
            bool fresh = true;
            for (const auto& d : descent)
                if (std::abs(wdot(d, x)) > 0.9) fresh = false;
            if (fresh) descent.push_back(x);
        }
    }
    rep.descent_directions = static_cast<int>(descent.size());
    return rep;
}

} // namespace pflab
