// potential.hpp
// Double-well potentials, the surface-tension constant sigma, and the
// transform w = Phi(u) with Phi(s) = integral_{-1}^{s} sqrt(W(t)/2) dt.

#ifndef PFLAB_POTENTIAL_HPP
#define PFLAB_POTENTIAL_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "pflab/field.hpp"

namespace pflab {

struct DoubleWell {
    std::function<double(double)> W;
    std::function<double(double)> Wp;  // W'
    std::function<double(double)> Wpp; // W''
    double gamma = 0.0; // interior critical point of W in (-1,1)
    double alpha = 0.7; // convexity threshold
    double kappa = 1.0; // W'' >= kappa for |s| >= alpha
    // evaluation range (tabulated wells are only defined on their table)
    double smin = -1e300;
    double smax = 1e300;
    bool from_table = false;
    // tolerance for the exact-zero clauses of hypothesis (a); tabulated wells
    // widen it to their interpolation accuracy
    double hypothesis_tol = 1e-8;
};

// W(u) = (1-u^2)^2 with gamma=0, alpha=0.7, kappa=1.88.
DoubleWell canonical_quartic();

// Uniform two-column (s, W(s)) table, cubic interpolation. The table must
// cover at least [-1.5, 1.5]. gamma is located from the sign change of W',
// kappa defaults to 0.95 * min W'' over the sampled |s| >= alpha.
DoubleWell tabulated_well(const std::string& path, double alpha = 0.7);
DoubleWell tabulated_well_from(const std::vector<double>& s, const std::vector<double>& W,
                               double alpha = 0.7);

struct WellConstants {
    double sigma = 0.0;      // integral_{-1}^{1} sqrt(2 W)
    double phi_at_one = 0.0; // Phi(1) = sigma / 2
};

// Adaptive quadrature of sqrt(2 W) on [-1,1] to 1e-8 relative accuracy.
// Throws on non-convergence.
WellConstants sigma_constant(const DoubleWell& w);

// Hypotheses (a)-(c) checked on a uniform sample grid.
struct HypothesisReport {
    bool a_ok = false, b_ok = false, c_ok = false;
    double a_margin = 0.0; // most negative sampled W (and endpoint defects)
    double b_margin = 0.0; // worst signed slope defect on the monotone intervals
    double c_margin = 0.0; // min over |s|>=alpha of W''(s) - kappa
    std::string detail;
    bool tabulated_smoothness_flag = false; // C^3 stands on the interpolant only
    bool passed() const { return a_ok && b_ok && c_ok; }
};
HypothesisReport validate_hypotheses(const DoubleWell& w, int samples);

// Monotone interpolation table for Phi with exact endpoint-tangent extension
// outside [-1,1]; inputs beyond [-1.5, 1.5] are rejected.
class PhiTable {
public:
    explicit PhiTable(const DoubleWell& w, int intervals = 2048);
    double operator()(double s) const;
    double phi_at_one() const { return phi1_; }

private:
    double lo_ = -1.0, dx_ = 0.0, phi1_ = 0.0;
    double slope_lo_ = 0.0, slope_hi_ = 0.0;
    std::vector<double> val_, der_;
};

// Pointwise w = Phi(u).
ScalarField phi_transform(const ScalarField& u, const DoubleWell& w);
ScalarField phi_transform(const ScalarField& u, const PhiTable& table);

} // namespace pflab

#endif
