#include "pflab/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pflab/energy.hpp"
#include "pflab/krylov.hpp"
#include "pflab/ops.hpp"

namespace pflab {

ScalarField residual(const PhaseState& s) {
    ScalarField lap = laplacian(s.u);
    VectorField gu = gradient(s.u);
    const double eps = s.epsilon;
    ScalarField out(s.grid);
    const int dim = s.grid.dim;
    parallel_for(out.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            double adv = 0.0;
            for (int a = 0; a < dim; ++a) adv += s.v[a][i] * gu[a][i];
            out[i] = -eps * lap[i] + s.well.Wp(s.u[i]) / eps - eps * adv;
        }
    });
    if (!out.all_finite()) throw Error("residual: non-finite output (diverged state)");
    return out;
}

ScalarField jacobian_apply(const PhaseState& s, const ScalarField& dir) {
    ScalarField lap = laplacian(dir);
    VectorField gd = gradient(dir);
    const double eps = s.epsilon;
    ScalarField out(s.grid);
    const int dim = s.grid.dim;
    parallel_for(out.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            double adv = 0.0;
            for (int a = 0; a < dim; ++a) adv += s.v[a][i] * gd[a][i];
            out[i] = -eps * lap[i] + s.well.Wpp(s.u[i]) * dir[i] / eps - eps * adv;
        }
    });
    if (!out.all_finite()) throw Error("jacobian: non-finite output (diverged state)");
    return out;
}

namespace {

ScalarField jacobian_diagonal(const PhaseState& s) {
    ScalarField d(s.grid);
    double lap_diag = 0.0;
    for (int a = 0; a < s.grid.dim; ++a)
        lap_diag += 2.0 * s.epsilon / (s.grid.spacing[a] * s.grid.spacing[a]);
    parallel_for(d.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) d[i] = lap_diag + s.well.Wpp(s.u[i]) / s.epsilon;
    });
    // keep the preconditioner positive even where W'' dips negative
    double floor = 0.05 * lap_diag;
    for (auto& x : d.values) x = std::max(x, floor);
    return d;
}

} // namespace

std::pair<PhaseState, SolveReport> newton_refine(const PhaseState& initial,
                                                 const SolverOptions& opts) {
    PhaseState s = initial;
    SolveReport rep;
    rep.continuation_ladder.push_back(s.epsilon);
    ScalarField F = residual(s);
    double nrm = l2_norm(F);
    PhaseState best = s;
    double best_nrm = nrm;

    while (nrm > opts.tol) {
        if (rep.newton_iterations >= opts.max_newton) {
            rep.residual_norm = best_nrm;
            throw SolveFailure("newton: iteration limit (" + std::to_string(opts.max_newton) +
                                   ") reached, residual " + std::to_string(best_nrm),
                               best, rep);
        }
        ScalarField diag = jacobian_diagonal(s);
        auto Aop = [&](const ScalarField& x) { return jacobian_apply(s, x); };
        // small systems afford long restarts, which resolve the soft
        // interface-translation modes that defeat short-restart GMRES
        const bool small = s.grid.node_count() <= 200000;
        const int restart = small ? 256 : opts.gmres_restart;
        const int maxit = small ? 2000 : opts.lin_max_iter;
        KrylovResult lin = gmres(Aop, scale(F, -1.0), ScalarField(s.grid, 0.0), opts.lin_tol,
                                 maxit, restart, &diag);
        rep.linear_iterations += lin.iterations;

        double lambda = 1.0;
        const double n2 = nrm * nrm;
        bool accepted = false;
        while (lambda >= 1e-8) {
            ScalarField trial = s.u;
            axpy(lambda, lin.x, trial);
            if (!trial.all_finite() || sup_norm(trial) > 1.5) {
                lambda *= 0.5;
                continue;
            }
            PhaseState cand = s;
            cand.u = std::move(trial);
            ScalarField Fn;
            try {
                Fn = residual(cand);
            } catch (const Error&) {
                lambda *= 0.5;
                continue;
            }
            double nn = l2_norm(Fn);
            if (nn * nn <= (1.0 - 1e-4 * lambda) * n2) {
                s = std::move(cand);
                F = std::move(Fn);
                nrm = nn;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        rep.newton_iterations += 1;
        if (!accepted) {
            rep.residual_norm = best_nrm;
            throw SolveFailure("newton: damping floor reached (lambda < 1e-8), residual " +
                                   std::to_string(best_nrm),
                               best, rep);
        }
        rep.damping_history.push_back(lambda);
        if (nrm < best_nrm) {
            best = s;
            best_nrm = nrm;
        }
    }
    rep.residual_norm = l2_norm(residual(s));
    rep.converged = rep.residual_norm <= opts.tol;
    return {std::move(s), std::move(rep)};
}

std::pair<PhaseState, SolveReport> newton_solve(const PhaseState& initial, double target_eps,
                                                double tol, SolverOptions opts) {
    require(tol > 0.0, "newton_solve: tol must be positive");
    require(target_eps > 0.0, "newton_solve: target epsilon must be positive");
    require(initial.u.all_finite(), "newton_solve: initial u must be finite");
    opts.tol = tol;

    // rung values: from max(initial eps, 4*target) down by the continuation
    // factor, ending exactly at target
    std::vector<double> ladder;
    double e = std::max(initial.epsilon, 4.0 * target_eps);
    ladder.push_back(e);
    while (e > target_eps * (1.0 + 1e-12)) {
        e = std::max(target_eps, e / opts.continuation_factor);
        ladder.push_back(e);
    }

    PhaseState s = initial;
    SolveReport total;
    for (double rung : ladder) {
        s.epsilon = rung;
        if (opts.relax_steps > 0) s = relax_flow(s, opts.relax_steps, opts.cfl, opts);
        SolverOptions ro = opts;
        auto [next, rep] = newton_refine(s, ro); // throws SolveFailure on stall
        s = std::move(next);
        total.newton_iterations += rep.newton_iterations;
        total.linear_iterations += rep.linear_iterations;
        total.damping_history.insert(total.damping_history.end(), rep.damping_history.begin(),
                                     rep.damping_history.end());
        total.continuation_ladder.push_back(rung);
    }
    total.residual_norm = l2_norm(residual(s));
    total.converged = total.residual_norm <= tol;
    return {std::move(s), std::move(total)};
}

double stabilization_constant(const PhaseState& s, const SolverOptions& opts) {
    if (!opts.stabilization_auto) return opts.stabilization;
    double lo = std::min(-1.0, min_value(s.u)) - 0.05;
    double hi = std::max(1.0, max_value(s.u)) + 0.05;
    double S = s.well.kappa;
    for (int i = 0; i <= 2000; ++i) {
        double x = lo + (hi - lo) * i / 2000.0;
        S = std::max(S, s.well.Wpp(x));
    }
    return S;
}

PhaseState relax_flow(const PhaseState& s0, int steps, double cfl, const SolverOptions& opts) {
    require(cfl > 0.0 && cfl <= 1.0, "relax_flow: cfl must be in (0, 1]");
    PhaseState s = s0;
    const double eps = s.epsilon;
    const double S = stabilization_constant(s, opts);
    const double tau = cfl * eps;
    const bool check_energy = s.is_gradient_advection();
    const ScalarField* rho = s.rho ? &*s.rho : nullptr;
    double F_prev = check_energy ? weighted_energy(s.u, eps, s.well, rho) : 0.0;
    const double F_floor = 1e-13 * std::max(std::abs(F_prev), 1.0);

    auto Aop = [&](const ScalarField& x) {
        ScalarField lap = laplacian(x);
        ScalarField out(x.grid);
        parallel_for(out.size(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i)
                out[i] = x[i] - tau * eps * lap[i] + tau * S / eps * x[i];
        });
        return out;
    };

    for (int k = 0; k < steps; ++k) {
        VectorField gu = gradient(s.u);
        ScalarField rhs(s.grid);
        const int dim = s.grid.dim;
        parallel_for(rhs.size(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                double adv = 0.0;
                for (int a = 0; a < dim; ++a) adv += s.v[a][i] * gu[a][i];
                rhs[i] = s.u[i] + tau * (eps * adv - s.well.Wp(s.u[i]) / eps + S * s.u[i] / eps);
            }
        });
        KrylovResult lin = cg(Aop, rhs, s.u, 1e-12, 800);
        require(lin.x.all_finite(), "relax_flow: non-finite iterate");
        double m = sup_norm(lin.x);
        require(m <= 1.5, "relax_flow: overshoot guard |u| <= 1.5 violated (" + std::to_string(m) + ")");
        s.u = std::move(lin.x);
        if (check_energy) {
            double F_new = weighted_energy(s.u, eps, s.well, rho);
            if (F_new > F_prev + 1e-10 * std::abs(F_prev) + F_floor) {
                char buf[160];
                std::snprintf(buf, sizeof buf,
                              "relax_flow: energy increased at step %d (%.12g -> %.12g); "
                              "bug or tau too large",
                              k, F_prev, F_new);
                throw Error(buf);
            }
            F_prev = F_new;
        }
    }
    return s;
}

AssumptionReport assumption_report(const PhaseState& s, double p) {
    const int n = s.grid.dim;
    require(p > n / 2.0 && p < n, "assumption_report: need n/2 < p < n");
    AssumptionReport rep;
    rep.p = p;
    rep.q = n * p / (n - p);
    rep.sup_norm = sup_norm(s.u);
    rep.energy = integrate(energy_density(s.u, s.epsilon, s.well));

    // |v| pointwise
    ScalarField vmag(s.grid);
    parallel_for(vmag.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            double acc = 0.0;
            for (int a = 0; a < n; ++a) acc += s.v[a][i] * s.v[a][i];
            vmag[i] = std::sqrt(acc);
        }
    });
    rep.v_lq_norm = lp_norm(vmag, rep.q);

    // Frobenius |grad v| pointwise
    std::vector<VectorField> gv;
    gv.reserve(n);
    for (int a = 0; a < n; ++a) gv.push_back(gradient(s.v[a]));
    ScalarField gmag(s.grid);
    parallel_for(gmag.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            double acc = 0.0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) acc += gv[a][b][i] * gv[a][b][i];
            gmag[i] = std::sqrt(acc);
        }
    });
    rep.grad_v_lp_norm = lp_norm(gmag, p);
    return rep;
}

} // namespace pflab
