// state.hpp
// PhaseState: a phase field u on a grid with diffuse-interface parameter
// epsilon, a double well, and an advection field v (optionally the gradient
// of a potential rho).

#ifndef PFLAB_STATE_HPP
#define PFLAB_STATE_HPP

#include <optional>

#include "pflab/field.hpp"
#include "pflab/ops.hpp"
#include "pflab/potential.hpp"

namespace pflab {

struct PhaseState {
    GridSpec grid;
    ScalarField u;
    double epsilon = 0.1;
    DoubleWell well;
    std::optional<ScalarField> rho; // when set, v = grad(rho)
    VectorField v;

    PhaseState() = default;

    static PhaseState with_velocity(ScalarField u0, double eps, DoubleWell w, VectorField vel) {
        PhaseState s;
        s.grid = u0.grid;
        s.u = std::move(u0);
        s.epsilon = eps;
        s.well = std::move(w);
        s.v = std::move(vel);
        s.validate();
        return s;
    }

    static PhaseState with_potential(ScalarField u0, double eps, DoubleWell w, ScalarField rho0) {
        PhaseState s;
        s.grid = u0.grid;
        s.u = std::move(u0);
        s.epsilon = eps;
        s.well = std::move(w);
        s.v = gradient(rho0);
        s.rho = std::move(rho0);
        s.validate();
        return s;
    }

    static PhaseState quiescent(ScalarField u0, double eps, DoubleWell w) {
        VectorField zero(u0.grid);
        return with_velocity(std::move(u0), eps, std::move(w), std::move(zero));
    }

    bool has_potential() const { return rho.has_value(); }
    // true when the flow of F_eps is a gradient flow (v = grad rho or v = 0)
    bool is_gradient_advection() const;

    void validate() const;
};

} // namespace pflab

#endif
