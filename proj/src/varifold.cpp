#include "pflab/varifold.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "pflab/ops.hpp"

namespace pflab {

EnergyMeasure energy_measure(const PhaseState& s, double sigma) {
    require(sigma > 0.0, "energy_measure: sigma must be positive");
    EnergyMeasure m;
    m.grid = s.grid;
    m.sigma = sigma;
    m.density = scale(energy_density(s.u, s.epsilon, s.well), 1.0 / sigma);
    require(m.density.all_finite(), "energy_measure: non-finite density");
    return m;
}

EnergyMeasure energy_measure(const PhaseState& s) {
    return energy_measure(s, sigma_constant(s.well).sigma);
}

DiscrepancyField discrepancy(const PhaseState& s) {
    VectorField g = gradient(s.u);
    DiscrepancyField d;
    d.grid = s.grid;
    d.xi = ScalarField(s.grid);
    const int dim = s.grid.dim;
    parallel_for(d.xi.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            double g2 = 0.0;
            for (int a = 0; a < dim; ++a) g2 += g[a][i] * g[a][i];
            d.xi[i] = 0.5 * s.epsilon * g2 - s.well.W(s.u[i]) / s.epsilon;
        }
    });
    require(d.xi.all_finite(), "discrepancy: non-finite values");
    return d;
}

std::vector<DensityRatioReport> density_ratio_scan(const PhaseState& s,
                                                   const std::vector<std::array<double, 3>>& centers,
                                                   const std::vector<double>& radii,
                                                   bool restrict_to_interface) {
    const int n = s.grid.dim;
    ScalarField e = energy_density(s.u, s.epsilon, s.well);
    const double sigma = sigma_constant(s.well).sigma;
    std::vector<DensityRatioReport> out;
    for (const auto& c : centers) {
        if (restrict_to_interface && std::abs(interpolate(s.u, c)) > s.well.alpha) continue;
        DensityRatioReport rep;
        rep.center = c;
        rep.E_min = rep.mu_min = 1e300;
        rep.E_max = rep.mu_max = -1e300;
        for (double r : radii) {
            double mass = ball_integral(e, c, r); // throws if the ball leaves Omega
            double E = mass / std::pow(r, n - 1);
            double mu = E / sigma;
            rep.radii.push_back(r);
            rep.E.push_back(E);
            rep.mu_ratio.push_back(mu);
            rep.E_min = std::min(rep.E_min, E);
            rep.E_max = std::max(rep.E_max, E);
            rep.mu_min = std::min(rep.mu_min, mu);
            rep.mu_max = std::max(rep.mu_max, mu);
        }
        out.push_back(std::move(rep));
    }
    return out;
}

MonotonicityReport monotonicity_check(const PhaseState& s, std::array<double, 3> center,
                                      const std::vector<double>& radii) {
    require(radii.size() >= 5, "monotonicity_check: need at least 5 radii");
    const double h = *std::max_element(s.grid.spacing.begin(),
                                       s.grid.spacing.begin() + s.grid.dim);
    for (std::size_t i = 1; i < radii.size(); ++i) {
        require(radii[i] > radii[i - 1], "monotonicity_check: radii must increase");
        if (radii[i] - radii[i - 1] < 2.0 * h)
            throw Error("monotonicity_check: radius spacing below 2h is rejected");
    }
    const int n = s.grid.dim;
    const double eps = s.epsilon;
    require(ball_inside(s.grid, center, radii.back() + h),
            "monotonicity_check: outermost shell leaves Omega");

    ScalarField e = energy_density(s.u, s.epsilon, s.well);
    DiscrepancyField xi = discrepancy(s);
    VectorField gu = gradient(s.u);

    // ((y-x) . grad u)^2 and (v . grad u)((y-x) . grad u) as node fields
    ScalarField radial_sq(s.grid), advect(s.grid);
    parallel_for(radial_sq.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            auto x = s.grid.coords(s.grid.unindex(i));
            double ydotg = 0.0, vdotg = 0.0;
            for (int a = 0; a < n; ++a) {
                ydotg += (x[a] - center[a]) * gu[a][i];
                vdotg += s.v[a][i] * gu[a][i];
            }
            radial_sq[i] = ydotg * ydotg;
            advect[i] = vdotg * ydotg;
        }
    });

    MonotonicityReport rep;
    rep.center = center;
    std::vector<double> E(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i)
        E[i] = ball_integral(e, center, radii[i]) / std::pow(radii[i], n - 1);

    for (std::size_t i = 1; i + 1 < radii.size(); ++i) {
        const double r = radii[i];
        double lhs = (E[i + 1] - E[i - 1]) / (radii[i + 1] - radii[i - 1]);
        double defect = -ball_integral(xi.xi, center, r) / std::pow(r, n);
        double shell = (ball_integral(radial_sq, center, r + h) -
                        ball_integral(radial_sq, center, r - h)) /
                       (2.0 * h);
        double sphere = eps * shell / std::pow(r, n + 1);
        double adv = eps * ball_integral(advect, center, r) / std::pow(r, n);
        rep.radii.push_back(r);
        rep.lhs.push_back(lhs);
        rep.defect_term.push_back(defect);
        rep.sphere_term.push_back(sphere);
        rep.advect_term.push_back(adv);
        rep.residual.push_back(lhs - (defect + sphere + adv));
    }
    return rep;
}

FirstVariationReport first_variation(const PhaseState& s, const VectorField& g, double sigma) {
    require(g.grid.same_layout(s.grid), "first_variation: g grid mismatch");
    const int n = s.grid.dim;
    // compact support: zero within 2 cells of every non-periodic boundary
    for (int a = 0; a < n; ++a) {
        if (s.grid.bc[a].kind == BcKind::Periodic) continue;
        const int N = s.grid.nodes(a);
        for (std::size_t i = 0; i < s.grid.node_count(); ++i) {
            auto idx = s.grid.unindex(i);
            if (idx[a] <= 2 || idx[a] >= N - 3) {
                for (int b = 0; b < n; ++b)
                    require(g[b][i] == 0.0,
                            "first_variation: g support touches the boundary (axis " +
                                std::to_string(a) + ")");
            }
        }
    }

    EnergyMeasure mu = energy_measure(s, sigma);
    VectorField gu = gradient(s.u);
    std::vector<VectorField> gg; // gg[b] = gradient of component g_b
    gg.reserve(n);
    for (int b = 0; b < n; ++b) gg.push_back(gradient(g[b]));

    const double thresh = 1e-12;
    ScalarField integ_dV(s.grid), integ_pair(s.grid);
    double maxgrad = 0.0;
    for (std::size_t i = 0; i < integ_dV.size(); ++i) {
        double fro = 0.0;
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a) fro += gg[b][a][i] * gg[b][a][i];
        maxgrad = std::max(maxgrad, std::sqrt(fro));

        double norm2 = 0.0;
        for (int a = 0; a < n; ++a) norm2 += gu[a][i] * gu[a][i];
        double nrm = std::sqrt(norm2);
        if (nrm < thresh) {
            integ_dV[i] = 0.0;
            integ_pair[i] = 0.0;
            continue;
        }
        double div = 0.0, nGn = 0.0, vdotn = 0.0, gdotn = 0.0;
        for (int b = 0; b < n; ++b) {
            div += gg[b][b][i];
            for (int a = 0; a < n; ++a) nGn += (gu[b][i] / nrm) * gg[b][a][i] * (gu[a][i] / nrm);
            vdotn += s.v[b][i] * gu[b][i] / nrm;
            gdotn += g[b][i] * gu[b][i] / nrm;
        }
        integ_dV[i] = (div - nGn) * mu.density[i];
        integ_pair[i] = vdotn * gdotn * mu.density[i];
    }

    FirstVariationReport rep;
    rep.deltaV = integrate(integ_dV);
    rep.curvature_pairing = -integrate(integ_pair);
    rep.defect = std::abs(rep.deltaV - rep.curvature_pairing);
    rep.mass = mu.total_mass();
    rep.max_grad_g = maxgrad;
    return rep;
}

EquipartitionNorms equipartition_norms(const PhaseState& s, std::array<double, 3> lo,
                                       std::array<double, 3> hi) {
    const int n = s.grid.dim;
    for (int a = 0; a < n; ++a) {
        require(lo[a] < hi[a], "equipartition_norms: empty window");
        require(lo[a] > s.grid.lo(a) + s.grid.spacing[a] - 1e-12 &&
                    hi[a] < s.grid.hi(a) - s.grid.spacing[a] + 1e-12,
                "equipartition_norms: window touches the boundary on axis " + std::to_string(a));
    }
    DiscrepancyField xi = discrepancy(s);
    VectorField gu = gradient(s.u);
    ScalarField w = phi_transform(s.u, s.well);
    VectorField gw = gradient(w);

    ScalarField f1(s.grid), f2(s.grid), f3(s.grid);
    parallel_for(f1.size(), [&](std::size_t lo_, std::size_t hi_) {
        for (std::size_t i = lo_; i < hi_; ++i) {
            auto x = s.grid.coords(s.grid.unindex(i));
            bool in = true;
            for (int a = 0; a < n; ++a)
                if (x[a] < lo[a] || x[a] > hi[a]) in = false;
            if (!in) {
                f1[i] = f2[i] = f3[i] = 0.0;
                continue;
            }
            double g2 = 0.0, w2 = 0.0;
            for (int a = 0; a < n; ++a) {
                g2 += gu[a][i] * gu[a][i];
                w2 += gw[a][i] * gw[a][i];
            }
            double gradw = std::sqrt(w2);
            f1[i] = std::abs(xi.xi[i]);
            f2[i] = std::abs(0.5 * s.epsilon * g2 - gradw);
            f3[i] = std::abs(s.well.W(s.u[i]) / s.epsilon - gradw);
        }
    });
    EquipartitionNorms out;
    out.xi_l1 = integrate(f1);
    out.grad_gap_l1 = integrate(f2);
    out.well_gap_l1 = integrate(f3);
    return out;
}

HalvingReport halving_check(const PhaseState& s, const ScalarField& phi, double sigma) {
    require(phi.grid.same_layout(s.grid), "halving_check: phi grid mismatch");
    VectorField gu = gradient(s.u);
    ScalarField w = phi_transform(s.u, s.well);
    VectorField gw = gradient(w);
    const int n = s.grid.dim;
    ScalarField f1(s.grid), f2(s.grid), f3(s.grid);
    parallel_for(f1.size(), [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            double g2 = 0.0, w2 = 0.0;
            for (int a = 0; a < n; ++a) {
                g2 += gu[a][i] * gu[a][i];
                w2 += gw[a][i] * gw[a][i];
            }
            f1[i] = 0.5 * s.epsilon * g2 * phi[i];
            f2[i] = s.well.W(s.u[i]) / s.epsilon * phi[i];
            f3[i] = std::sqrt(w2) * phi[i];
        }
    });
    HalvingReport rep;
    rep.grad_half = integrate(f1) / sigma;
    rep.well_half = integrate(f2) / sigma;
    rep.w_mass = integrate(f3) / sigma;
    double top = std::max({rep.grad_half, rep.well_half, rep.w_mass});
    if (top > 0.0) {
        double gap = std::max({std::abs(rep.grad_half - rep.well_half),
                               std::abs(rep.well_half - rep.w_mass),
                               std::abs(rep.grad_half - rep.w_mass)});
        rep.max_pairwise_gap = gap / top;
    }
    return rep;
}

std::vector<double> density_estimate(const PhaseState& s,
                                     const std::vector<std::array<double, 3>>& centers, double r,
                                     double sigma) {
    require(s.grid.dim == 2, "density_estimate: 2D only");
    require(r >= 5.0 * s.epsilon, "density_estimate: r must be at least 5 eps");
    EnergyMeasure mu = energy_measure(s, sigma);
    std::vector<double> theta;
    for (const auto& c : centers) {
        double dist = 1e300;
        for (int a = 0; a < 2; ++a)
            dist = std::min({dist, c[a] - s.grid.lo(a), s.grid.hi(a) - c[a]});
        require(r <= 0.5 * dist,
                "density_estimate: radius window empty (need r <= dist(x, boundary)/2)");
        theta.push_back(ball_integral(mu.density, c, r) / (2.0 * r));
    }
    return theta;
}

} // namespace pflab
