// solver.hpp
// Damped Newton with epsilon-continuation for the advective Allen-Cahn
// equation  -eps Lap u + W'(u)/eps = eps v . grad u,  plus a stabilized
// semi-implicit relaxation flow used as globalizer and as the min-max
// descent preconditioner.

#ifndef PFLAB_SOLVER_HPP
#define PFLAB_SOLVER_HPP

#include <vector>

#include "pflab/state.hpp"

namespace pflab {

// Pointwise residual F(u) = -eps Lap u + W'(u)/eps - eps v . grad u.
ScalarField residual(const PhaseState& s);

// Jacobian action  J s = -eps Lap s + W''(u) s / eps - eps v . grad s.
ScalarField jacobian_apply(const PhaseState& s, const ScalarField& dir);

struct SolveReport {
    int newton_iterations = 0;
    int linear_iterations = 0;
    double residual_norm = 0.0; // discrete L2, recomputed from the state
    std::vector<double> damping_history;
    std::vector<double> continuation_ladder;
    bool converged = false;
};

struct SolverOptions {
    double tol = 1e-8;
    int max_newton = 100;
    double continuation_factor = 1.4142135623730951; // sqrt(2)
    int relax_steps = 5;   // globalizer steps before Newton on each rung
    double cfl = 0.5;      // relaxation step = cfl * eps
    bool stabilization_auto = true;
    double stabilization = 8.0; // used when stabilization_auto is false
    double lin_tol = 1e-4;
    int lin_max_iter = 600;
    int gmres_restart = 40;
};

// Thrown when damping hits the floor; carries the best state found.
struct SolveFailure : Error {
    PhaseState best;
    SolveReport report;
    SolveFailure(const std::string& what, PhaseState b, SolveReport r)
        : Error(what), best(std::move(b)), report(std::move(r)) {}
};

// Damped Newton at fixed epsilon.
std::pair<PhaseState, SolveReport> newton_refine(const PhaseState& initial,
                                                 const SolverOptions& opts);

// Continuation ladder from max(initial eps, 4*target) down to target by
// factors of continuation_factor, damped Newton on every rung.
std::pair<PhaseState, SolveReport> newton_solve(const PhaseState& initial, double target_eps,
                                                double tol, SolverOptions opts = {});

// Stabilized semi-implicit relaxation:
//   (I - tau eps Lap + tau S / eps) u_{k+1}
//       = u_k + tau (eps v . grad u_k - W'(u_k)/eps + S u_k / eps),
// tau = cfl * eps. When v = grad rho (or v = 0), F_eps must not increase by
// more than 1e-10 relative per step; a violation raises an Error.
PhaseState relax_flow(const PhaseState& s, int steps, double cfl, const SolverOptions& opts = {});

// Stabilization constant: max of W'' sampled over the state's value range
// (slightly widened), floored by kappa.
double stabilization_constant(const PhaseState& s, const SolverOptions& opts);

struct AssumptionReport {
    double sup_norm = 0.0;       // ||u||_inf
    double energy = 0.0;         // E_eps(u), unweighted
    double v_lq_norm = 0.0;      // ||v|| in L^{np/(n-p)}
    double grad_v_lp_norm = 0.0; // ||grad v|| in L^p (Frobenius)
    double p = 0.0;
    double q = 0.0; // np/(n-p)
};

// Monitored quantities of the standing assumptions; requires n/2 < p < n.
AssumptionReport assumption_report(const PhaseState& s, double p);

} // namespace pflab

#endif
