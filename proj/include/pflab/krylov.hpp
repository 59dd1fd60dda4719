// krylov.hpp
// Matrix-free linear solvers: restarted GMRES (general stencil operators,
// optionally Jacobi-preconditioned) and CG in the trapezoid-weighted inner
// product (for the symmetric semi-implicit operator).

#ifndef PFLAB_KRYLOV_HPP
#define PFLAB_KRYLOV_HPP

#include <functional>

#include "pflab/field.hpp"

namespace pflab {

using LinOp = std::function<ScalarField(const ScalarField&)>;

struct KrylovResult {
    ScalarField x;
    int iterations = 0;
    double rel_residual = 0.0;
    bool converged = false;
};

// Solves A x = b to ||Ax-b|| <= tol*||b|| (Euclidean). `diag` (optional)
// holds the operator diagonal used as a Jacobi preconditioner.
KrylovResult gmres(const LinOp& A, const ScalarField& b, const ScalarField& x0, double tol,
                   int max_iter, int restart = 30, const ScalarField* diag = nullptr);

// CG for A symmetric positive definite in the trapezoid-weighted product.
KrylovResult cg(const LinOp& A, const ScalarField& b, const ScalarField& x0, double tol,
                int max_iter);

} // namespace pflab

#endif
