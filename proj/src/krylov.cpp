#include "pflab/krylov.hpp"

#include <cmath>
#include <vector>

#include "pflab/ops.hpp"

namespace pflab {

KrylovResult gmres(const LinOp& A, const ScalarField& b, const ScalarField& x0, double tol,
                   int max_iter, int restart, const ScalarField* diag) {
    auto precond = [&](const ScalarField& r) {
        if (!diag) return r;
        ScalarField out(r.grid);
        parallel_for(r.size(), [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) out[i] = r[i] / (*diag)[i];
        });
        return out;
    };

    KrylovResult res;
    res.x = x0;
    ScalarField pb = precond(b);
    const double bnorm = std::sqrt(dot(pb, pb));
    if (bnorm == 0.0) {
        res.x = ScalarField(b.grid, 0.0);
        res.converged = true;
        return res;
    }

    int total = 0;
    double prev_cycle_rel = 1e300;
    while (total < max_iter) {
        ScalarField r = sub(b, A(res.x));
        r = precond(r);
        double beta = std::sqrt(dot(r, r));
        res.rel_residual = beta / bnorm;
        if (res.rel_residual <= tol) {
            res.converged = true;
            return res;
        }
        // a restart cycle that makes essentially no progress will not start
        // making progress later; return the best iterate
        if (res.rel_residual > 0.98 * prev_cycle_rel) break;
        prev_cycle_rel = res.rel_residual;
        const int m = restart;
        std::vector<ScalarField> V;
        V.reserve(m + 1);
        V.push_back(scale(r, 1.0 / beta));
        std::vector<std::vector<double>> H(m + 1, std::vector<double>(m, 0.0));
        std::vector<double> cs(m, 0.0), sn(m, 0.0), g(m + 1, 0.0);
        g[0] = beta;
        int k = 0;
        for (; k < m && total < max_iter; ++k, ++total) {
            ScalarField w = precond(A(V[k]));
            for (int j = 0; j <= k; ++j) {
                H[j][k] = dot(w, V[j]);
                axpy(-H[j][k], V[j], w);
            }
            H[k + 1][k] = std::sqrt(dot(w, w));
            if (H[k + 1][k] > 0.0) V.push_back(scale(w, 1.0 / H[k + 1][k]));
            // apply stored Givens rotations
            for (int j = 0; j < k; ++j) {
                double t = cs[j] * H[j][k] + sn[j] * H[j + 1][k];
                H[j + 1][k] = -sn[j] * H[j][k] + cs[j] * H[j + 1][k];
                H[j][k] = t;
            }
            const double arnoldi_sub = H[k + 1][k]; // pre-rotation subdiagonal
            double denom = std::hypot(H[k][k], H[k + 1][k]);
            if (denom == 0.0) denom = 1.0;
            cs[k] = H[k][k] / denom;
            sn[k] = H[k + 1][k] / denom;
            H[k][k] = denom;
            H[k + 1][k] = 0.0;
            g[k + 1] = -sn[k] * g[k];
            g[k] = cs[k] * g[k];
            res.rel_residual = std::abs(g[k + 1]) / bnorm;
            res.iterations = total + 1;
            if (res.rel_residual <= tol || arnoldi_sub == 0.0) {
                ++k;
                ++total;
                break;
            }
        }
        // back-substitute y and update x
        std::vector<double> y(k, 0.0);
        for (int i = k - 1; i >= 0; --i) {
            double s = g[i];
            for (int j = i + 1; j < k; ++j) s -= H[i][j] * y[j];
            y[i] = H[i][i] != 0.0 ? s / H[i][i] : 0.0;
        }
        for (int i = 0; i < k; ++i) axpy(y[i], V[i], res.x);
        if (res.rel_residual <= tol) {
            res.converged = true;
            return res;
        }
        if (k == 0) break; // stagnation
    }
    ScalarField r = precond(sub(b, A(res.x)));
    res.rel_residual = std::sqrt(dot(r, r)) / bnorm;
    res.converged = res.rel_residual <= tol;
    return res;
}

KrylovResult cg(const LinOp& A, const ScalarField& b, const ScalarField& x0, double tol,
                int max_iter) {
    KrylovResult res;
    res.x = x0;
    ScalarField r = sub(b, A(res.x));
    ScalarField p = r;
    double rr = inner_product(r, r);
    const double b2 = inner_product(b, b);
    const double stop2 = tol * tol * (b2 > 0 ? b2 : 1.0);
    for (int it = 0; it < max_iter; ++it) {
        if (rr <= stop2) break;
        ScalarField Ap = A(p);
        double pAp = inner_product(p, Ap);
        if (pAp <= 0.0) break; // loss of definiteness
        double alpha = rr / pAp;
        axpy(alpha, p, res.x);
        axpy(-alpha, Ap, r);
        double rr2 = inner_product(r, r);
        double beta = rr2 / rr;
        rr = rr2;
        ScalarField pn = r;
        axpy(beta, p, pn);
        p = std::move(pn);
        res.iterations = it + 1;
    }
    res.rel_residual = std::sqrt(rr / (b2 > 0 ? b2 : 1.0));
    res.converged = rr <= stop2;
    return res;
}

} // namespace pflab
