// ops.hpp
// Second-order finite-difference operators and node quadrature.
//
// Ghost policy per axis: reflection (Neumann), fixed ghost value (Dirichlet),
// wraparound (Periodic). With the trapezoidal node weights of GridSpec the
// Laplacian is exactly self-adjoint on Neumann/periodic grids.

#ifndef PFLAB_OPS_HPP
#define PFLAB_OPS_HPP

#include "pflab/field.hpp"

namespace pflab {

// (2n+1)-point Laplacian. Rejects non-finite input with a diagnostic naming
// the offending node.
ScalarField laplacian(const ScalarField& u);

// Componentwise central differences with the same ghost policy. On a Neumann
// boundary the reflected ghost makes the normal component exactly zero.
VectorField gradient(const ScalarField& u);

// Transpose of the linear part of `gradient` (including boundary rows):
// out_j = sum_{a,i} G_a[i] * d(gradient(u)_a[i]) / du_j.
ScalarField gradient_transpose(const VectorField& G);

// Trapezoidal-node quadrature over Omega.
double integrate(const ScalarField& f);
double inner_product(const ScalarField& f, const ScalarField& g);
// (integral of |f|^p)^(1/p)
double lp_norm(const ScalarField& f, double p);
// sqrt(inner_product(f, f))
double l2_norm(const ScalarField& f);

// Plain Euclidean dot / norm over raw node values (deterministic reduction;
// used by the Krylov solvers).
double dot(const ScalarField& a, const ScalarField& b);

} // namespace pflab

#endif
