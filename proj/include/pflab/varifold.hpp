// varifold.hpp
// Diffuse-interface diagnostics: the energy measure mu and its associated
// varifold, the discrepancy xi, density-ratio scans E(r,x), the radial
// monotonicity identity, the first variation and its curvature pairing,
// equipartition norms, the halving identity, and 2D density estimates.
//
// Conventions: E(r,x) integrates the raw energy density (no 1/sigma), the
// measure mu carries the 1/sigma normalization; reports expose both.

#ifndef PFLAB_VARIFOLD_HPP
#define PFLAB_VARIFOLD_HPP

#include <vector>

#include "pflab/ball.hpp"
#include "pflab/energy.hpp"
#include "pflab/state.hpp"

namespace pflab {

struct EnergyMeasure {
    GridSpec grid;
    ScalarField density; // (1/sigma)(eps |grad u|^2/2 + W(u)/eps)
    double sigma = 0.0;
    double total_mass() const { return integrate(density); }
};

struct DiscrepancyField {
    GridSpec grid;
    ScalarField xi; // eps |grad u|^2/2 - W(u)/eps
};

EnergyMeasure energy_measure(const PhaseState& s, double sigma);
EnergyMeasure energy_measure(const PhaseState& s); // computes sigma itself
DiscrepancyField discrepancy(const PhaseState& s);

struct DensityRatioReport {
    std::array<double, 3> center{};
    std::vector<double> radii;
    std::vector<double> E;        // E(r,x), unnormalized
    std::vector<double> mu_ratio; // mu(B_r)/r^{n-1}, sigma-normalized
    double E_min = 0.0, E_max = 0.0;
    double mu_min = 0.0, mu_max = 0.0;
};

// One report per center. With restrict_to_interface, centers where
// |u(center)| > alpha are dropped.
std::vector<DensityRatioReport> density_ratio_scan(const PhaseState& s,
                                                   const std::vector<std::array<double, 3>>& centers,
                                                   const std::vector<double>& radii,
                                                   bool restrict_to_interface);

struct MonotonicityReport {
    std::array<double, 3> center{};
    std::vector<double> radii;       // interior radii (centered differences)
    std::vector<double> lhs;         // dE/dr
    std::vector<double> defect_term; // (1/r^n) int_{B_r} (W/eps - eps|grad u|^2/2)
    std::vector<double> sphere_term; // (eps/r^{n+1}) int_{dB_r} ((y-x).grad u)^2
    std::vector<double> advect_term; // (eps/r^n) int_{B_r} (v.grad u)((y-x).grad u)
    std::vector<double> residual;    // lhs - sum of terms
};

// Sphere integrals by the shell difference quotient with delta = h; dE/dr by
// centered differences over the radius grid (spacing >= 2h required).
MonotonicityReport monotonicity_check(const PhaseState& s, std::array<double, 3> center,
                                      const std::vector<double>& radii);

struct FirstVariationReport {
    double deltaV = 0.0;            // delta V_eps(g)
    double curvature_pairing = 0.0; // -int S^perp(v).g dV_eps
    double defect = 0.0;            // |deltaV - curvature_pairing|
    double mass = 0.0;              // ||V_eps||(Omega)
    double max_grad_g = 0.0;        // max Frobenius |grad g|
};

// g must vanish within two cells of the boundary; nodes with
// |grad u| < 1e-12 contribute to mu but not to the projection integrands.
FirstVariationReport first_variation(const PhaseState& s, const VectorField& g, double sigma);

struct EquipartitionNorms {
    double xi_l1 = 0.0;        // int |xi|
    double grad_gap_l1 = 0.0;  // int |eps|grad u|^2/2 - |grad w||
    double well_gap_l1 = 0.0;  // int |W/eps - |grad w||
};

// Over the window box [lo, hi] (must be strictly inside Omega).
EquipartitionNorms equipartition_norms(const PhaseState& s, std::array<double, 3> lo,
                                       std::array<double, 3> hi);

struct HalvingReport {
    double grad_half = 0.0; // (1/sigma) int (eps/2)|grad u|^2 phi
    double well_half = 0.0; // (1/sigma) int (W/eps) phi
    double w_mass = 0.0;    // (1/sigma) int |grad w| phi
    double max_pairwise_gap = 0.0; // relative to the largest of the three
};

HalvingReport halving_check(const PhaseState& s, const ScalarField& phi, double sigma);

// 2D density estimate theta ~ mu(B_r(x))/(2r); requires r in
// [5 eps, dist(x, boundary)/2].
std::vector<double> density_estimate(const PhaseState& s,
                                     const std::vector<std::array<double, 3>>& centers, double r,
                                     double sigma);

} // namespace pflab

#endif
