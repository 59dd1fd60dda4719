// minmax.hpp
// Mountain-pass search over discretized paths joining u = -1 and u = +1:
// string-method relaxation of the weighted energy F_eps, Newton refinement
// of the max node, and Rayleigh-quotient probing of the saddle signature.

#ifndef PFLAB_MINMAX_HPP
#define PFLAB_MINMAX_HPP

#include <optional>
#include <vector>

#include "pflab/energy.hpp"
#include "pflab/solver.hpp"

namespace pflab {

enum class PathSeeding { Linear, Sweep, Radial };
PathSeeding parse_seeding(const std::string& name);

struct PathOfStates {
    GridSpec grid;
    double epsilon = 0.1;
    DoubleWell well;
    std::optional<ScalarField> rho;
    std::vector<ScalarField> nodes; // m+1 fields; nodes[0] = -1, nodes[m] = +1 pinned

    int segments() const { return static_cast<int>(nodes.size()) - 1; }
    void validate() const;
    PhaseState state_at(int k) const;
};

// Seeds a path with m segments. `linear` interpolates the constants,
// `sweep` sweeps a planar kink along the first axis, `radial` sweeps a
// circular kink in |x - center|.
PathOfStates init_path(const GridSpec& grid, int m, PathSeeding seeding, double eps,
                       const DoubleWell& well, std::optional<ScalarField> rho = std::nullopt);

struct MountainPassReport {
    double minmax_value = 0.0;      // max-node F_eps after relaxation
    int saddle_index_estimate = -1; // filled by morse_probe
    double saddle_residual = 0.0;   // filled by refine_saddle
    std::vector<double> history;    // max-node value per accepted sweep
    int sweeps_done = 0;
    bool converged = false;
};

struct RelaxOptions {
    int max_sweeps = 400;
    double cfl = 0.5;           // descent step tau = cfl * eps
    double rel_change = 1e-8;   // early stop when max-node change < this over 10 sweeps
    int backtrack_limit = 30;   // global step halvings before giving up
};

// Per sweep every interior node takes one preconditioned descent step on
// F_eps in the exp(rho)-weighted metric, then the path is reparametrized to
// equal arclength in that metric. The recorded max-node history is
// non-increasing (a sweep that would raise it is retried with a halved
// step; at the floor the best path is returned with converged = false).
std::pair<PathOfStates, MountainPassReport> relax_path(const PathOfStates& path, int sweeps,
                                                       RelaxOptions opts = {});

// Newton (solver module) from the max node with v = grad(rho).
std::pair<PhaseState, SolveReport> refine_saddle(const PathOfStates& path, double tol = 1e-6,
                                                 SolverOptions opts = {});

struct ProbeReport {
    int negative_quotients = 0; // probes whose minimized Rayleigh quotient < 0
    int descent_directions = 0; // distinct (mutually non-parallel) negative directions
    std::vector<double> quotients;
};

// Rayleigh-quotient minimization of the Jacobian at `s` in the
// exp(rho)-weighted inner product, from `count` random starts.
ProbeReport morse_probe(const PhaseState& s, int count, unsigned long seed, int iters = 120);

} // namespace pflab

#endif
