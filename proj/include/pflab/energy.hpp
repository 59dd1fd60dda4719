// energy.hpp
// The weighted diffuse-interface energy
//   F_eps(u) = integral (eps |grad u|^2 / 2 + W(u)/eps) exp(rho)
// with its exact discrete gradient. The gradient is exact for the discrete
// functional (central-difference density, trapezoid nodes), which makes the
// finite-difference gradient check hold to rounding and gives the min-max
// relaxation a checkable Lyapunov function.

#ifndef PFLAB_ENERGY_HPP
#define PFLAB_ENERGY_HPP

#include "pflab/potential.hpp"
#include "pflab/state.hpp"

namespace pflab {

// eps |grad u|^2 / 2 + W(u)/eps at the nodes (no sigma normalization).
ScalarField energy_density(const ScalarField& u, double eps, const DoubleWell& well);

// F_eps; rho == nullptr means rho identically 0.
double weighted_energy(const ScalarField& u, double eps, const DoubleWell& well,
                       const ScalarField* rho = nullptr);
double weighted_energy(const PhaseState& s);

// L^2 representer R of the exact discrete differential:
//   d/dt F_eps(u + t phi) |_{t=0} = inner_product(R, phi)   (to rounding).
ScalarField energy_gradient(const ScalarField& u, double eps, const DoubleWell& well,
                            const ScalarField* rho = nullptr);

// Node quadrature weights as a field.
ScalarField weights_field(const GridSpec& g);

} // namespace pflab

#endif
