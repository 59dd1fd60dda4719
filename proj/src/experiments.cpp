#include "pflab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "pflab/interface.hpp"
#include "pflab/minmax.hpp"
#include "pflab/ops.hpp"
#include "pflab/report.hpp"
#include "pflab/snapshot.hpp"
#include "pflab/solver.hpp"
#include "pflab/varifold.hpp"

namespace pflab {

using nlohmann::json;

std::string resolve_out_dir(const ExperimentConfig& cfg) {
    if (!cfg.out_dir.empty()) return cfg.out_dir;
    std::string root = "pflab-out";
    if (const char* env = std::getenv("PFLAB_OUT_ROOT")) root = env;
    return root + "/" + cfg.experiment;
}

DoubleWell well_from_config(const ExperimentConfig& cfg) {
    if (cfg.well == "quartic") return canonical_quartic();
    if (cfg.well.rfind("file:", 0) == 0) {
        DoubleWell w = tabulated_well(cfg.well.substr(5));
        HypothesisReport rep = validate_hypotheses(w, 2001);
        require(rep.passed(), "well: hypotheses (a)-(c) fail: " + rep.detail);
        return w;
    }
    throw Error("well: must be 'quartic' or 'file:<path>'");
}

ScalarField rho_from_spec(const GridSpec& grid, const std::string& spec) {
    if (spec.rfind("quadratic:", 0) == 0) {
        double c = std::stod(spec.substr(10));
        std::array<double, 3> ctr{0, 0, 0};
        for (int a = 0; a < grid.dim; ++a) ctr[a] = 0.5 * (grid.lo(a) + grid.hi(a));
        return sample(grid, [&](std::array<double, 3> x) {
            double r2 = 0.0;
            for (int a = 0; a < grid.dim; ++a) r2 += (x[a] - ctr[a]) * (x[a] - ctr[a]);
            return c * r2;
        });
    }
    if (spec.rfind("affine:", 0) == 0) {
        std::vector<double> coef;
        std::istringstream is(spec.substr(7));
        std::string item;
        while (std::getline(is, item, ',')) coef.push_back(std::stod(item));
        require(static_cast<int>(coef.size()) == grid.dim + 1,
                "rho affine: need 1 + dim coefficients (a0, a1, ...)");
        return sample(grid, [&](std::array<double, 3> x) {
            double v = coef[0];
            for (int a = 0; a < grid.dim; ++a) v += coef[a + 1] * x[a];
            return v;
        });
    }
    if (spec.rfind("snapshot:", 0) == 0) {
        ScalarField f = read_snapshot_file(spec.substr(9));
        require(f.grid.same_layout(grid), "rho snapshot: grid mismatch with the experiment grid");
        return f;
    }
    throw Error("rho: unknown spec '" + spec + "'");
}

VectorField velocity_from_spec(const GridSpec& grid, const std::string& spec) {
    if (spec.rfind("constant:", 0) == 0) {
        std::vector<double> comp;
        std::istringstream is(spec.substr(9));
        std::string item;
        while (std::getline(is, item, ',')) comp.push_back(std::stod(item));
        require(static_cast<int>(comp.size()) == grid.dim, "velocity constant: need dim components");
        VectorField v(grid);
        for (int a = 0; a < grid.dim; ++a)
            v[a] = ScalarField(grid, comp[a]);
        return v;
    }
    if (spec.rfind("snapshot-prefix:", 0) == 0) {
        std::string prefix = spec.substr(16);
        VectorField v(grid);
        for (int a = 0; a < grid.dim; ++a) {
            ScalarField f = read_snapshot_file(prefix + std::to_string(a) + ".pfield");
            require(f.grid.same_layout(grid), "velocity snapshot: grid mismatch");
            v[a] = std::move(f);
        }
        return v;
    }
    throw Error("velocity: unknown spec '" + spec + "'");
}

VectorField random_test_field(const GridSpec& grid, unsigned long seed, int index) {
    std::mt19937_64 rng(seed + 7919ull * static_cast<unsigned long>(index));
    auto uniform = [&]() {
        return (static_cast<double>(rng() >> 11) + 0.5) / 9007199254740992.0;
    };
    const int dim = grid.dim;
    std::array<int, 3> kx{}, ky{};
    std::array<double, 3> ph1{}, ph2{};
    for (int a = 0; a < dim; ++a) {
        kx[a] = 1 + static_cast<int>(uniform() * 2.0);
        ky[a] = 1 + static_cast<int>(uniform() * 2.0);
        ph1[a] = 2.0 * M_PI * uniform();
        ph2[a] = 2.0 * M_PI * uniform();
    }
    // margin cutoff keeps the support at least four cells off the boundary
    std::array<double, 3> lo{}, hi{}, width{}, margin{};
    for (int a = 0; a < dim; ++a) {
        lo[a] = grid.lo(a);
        hi[a] = grid.hi(a);
        width[a] = 0.1 * (hi[a] - lo[a]);
        margin[a] = 4.0 * grid.spacing[a];
    }
    return sample_vector(grid, [=](std::array<double, 3> x) {
        double cut = 1.0;
        for (int a = 0; a < dim; ++a) {
            double d = std::min(x[a] - lo[a], hi[a] - x[a]) - margin[a];
            double t = std::clamp(d / width[a], 0.0, 1.0);
            cut *= t * t * (3.0 - 2.0 * t);
        }
        std::array<double, 3> out{0, 0, 0};
        for (int a = 0; a < dim; ++a) {
            double phase1 = kx[a] * M_PI * (x[0] - lo[0]) / (hi[0] - lo[0]) + ph1[a];
            double phase2 = dim > 1 ? ky[a] * M_PI * (x[1] - lo[1]) / (hi[1] - lo[1]) + ph2[a] : 0.0;
            out[a] = std::sin(phase1) * (dim > 1 ? std::cos(phase2) : 1.0) * cut;
        }
        return out;
    });
}

namespace {

PhaseState make_state(const ExperimentConfig& cfg, const GridSpec& grid, ScalarField u0,
                      const DoubleWell& well) {
    if (!cfg.rho.empty())
        return PhaseState::with_potential(std::move(u0), cfg.epsilon, well,
                                          rho_from_spec(grid, cfg.rho));
    if (!cfg.velocity.empty())
        return PhaseState::with_velocity(std::move(u0), cfg.epsilon, well,
                                         velocity_from_spec(grid, cfg.velocity));
    return PhaseState::quiescent(std::move(u0), cfg.epsilon, well);
}

SolverOptions solver_options(const ExperimentConfig& cfg) {
    SolverOptions o;
    o.tol = cfg.tol;
    o.max_newton = cfg.max_newton;
    o.continuation_factor = cfg.continuation_factor;
    o.relax_steps = cfg.relax_steps;
    o.cfl = cfg.cfl;
    o.stabilization_auto = cfg.stabilization_auto;
    o.stabilization = cfg.stabilization;
    return o;
}

void write_json(const std::string& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

json solve_report_json(const SolveReport& rep) {
    return json{{"newton_iterations", rep.newton_iterations},
                {"linear_iterations", rep.linear_iterations},
                {"residual_norm", rep.residual_norm},
                {"damping_history", rep.damping_history},
                {"continuation_ladder", rep.continuation_ladder},
                {"converged", rep.converged}};
}

// sup |u - tanh(sqrt2 (x - c)/eps)| minimized over the shift c
double aligned_kink_error(const PhaseState& s, double* shift_out = nullptr) {
    const GridSpec& g = s.grid;
    const double k = std::sqrt(2.0) / s.epsilon;
    auto err = [&](double c) {
        double m = 0.0;
        for (int i = 0; i < g.nodes(0); ++i) {
            double x = g.origin[0] + i * g.spacing[0];
            m = std::max(m, std::abs(s.u[i] - std::tanh(k * (x - c))));
        }
        return m;
    };
    // locate the zero crossing
    double c0 = 0.0;
    for (int i = 0; i + 1 < g.nodes(0); ++i) {
        if ((s.u[i] < 0) != (s.u[i + 1] < 0)) {
            double x = g.origin[0] + i * g.spacing[0];
            c0 = x - s.u[i] * g.spacing[0] / (s.u[i + 1] - s.u[i]);
            break;
        }
    }
    // golden-section refinement around the crossing
    double a = c0 - g.spacing[0], b = c0 + g.spacing[0];
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = err(x1), f2 = err(x2);
    for (int it = 0; it < 120; ++it) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = err(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = err(x2);
        }
    }
    double c = 0.5 * (a + b);
    if (shift_out) *shift_out = c;
    return err(c);
}

void run_standing_wave(const ExperimentConfig& cfg, const std::string& out) {
    DoubleWell well = well_from_config(cfg);
    GridSpec grid = GridSpec::line(cfg.resolved_cells, cfg.resolved_lo, cfg.resolved_hi);
    ScalarField u0 = sample(grid, [&](std::array<double, 3> x) {
        return std::tanh(x[0] / (2.0 * cfg.epsilon)); // smoothed step
    });
    PhaseState init = make_state(cfg, grid, std::move(u0), well);
    auto [state, rep] = newton_solve(init, cfg.epsilon, cfg.tol, solver_options(cfg));

    const double sigma = sigma_constant(well).sigma;
    double shift = 0.0;
    double sup_err = aligned_kink_error(state, &shift);
    double energy = integrate(energy_density(state.u, state.epsilon, well));
    DiscrepancyField xi = discrepancy(state);
    EnergyMeasure mu = energy_measure(state, sigma);
    AssumptionReport assume = assumption_report(state, cfg.p);

    write_snapshot_file(out + "/u.pfield", state.u);
    CsvWriter csv(out + "/profile.csv", {"x", "u", "tanh_ref", "xi"});
    const double k = std::sqrt(2.0) / state.epsilon;
    for (int i = 0; i < grid.nodes(0); ++i) {
        double x = grid.origin[0] + i * grid.spacing[0];
        csv.row({x, state.u[i], std::tanh(k * (x - shift)), xi.xi[i]});
    }
    csv.close();

    write_json(out + "/report.json",
               json{{"experiment", "standing-wave"},
                    {"epsilon", state.epsilon},
                    {"sigma", sigma},
                    {"energy", energy},
                    {"energy_minus_sigma", energy - sigma},
                    {"sup_error_aligned", sup_err},
                    {"shift", shift},
                    {"xi_l1", lp_norm(xi.xi, 1.0)},
                    {"xi_sup", sup_norm(xi.xi)},
                    {"mu_mass", mu.total_mass()},
                    {"assumptions",
                     json{{"sup_norm", assume.sup_norm},
                          {"energy", assume.energy},
                          {"v_lq_norm", assume.v_lq_norm},
                          {"grad_v_lp_norm", assume.grad_v_lp_norm},
                          {"p", assume.p},
                          {"q", assume.q}}},
                    {"solve", solve_report_json(rep)}});
}

void run_line2d(const ExperimentConfig& cfg, const std::string& out) {
    DoubleWell well = well_from_config(cfg);
    GridSpec grid = GridSpec::square(cfg.resolved_cells, cfg.resolved_lo, cfg.resolved_hi);
    const double k = std::sqrt(2.0) / cfg.epsilon;
    ScalarField u0 = sample(grid, [&](std::array<double, 3> x) { return std::tanh(k * x[1]); });
    PhaseState init = make_state(cfg, grid, std::move(u0), well);
    auto [state, rep] = newton_solve(init, cfg.epsilon, cfg.tol, solver_options(cfg));
    const double sigma = sigma_constant(well).sigma;

    std::vector<std::array<double, 3>> centers;
    for (double cx : {0.0, -0.04, 0.04, -0.08, 0.08}) centers.push_back({cx, 0.0, 0.0});
    std::vector<double> radii;
    for (double r = 0.1; r <= 0.401; r += 0.025) radii.push_back(r);
    auto scans = density_ratio_scan(state, centers, radii, true);

    CsvWriter dr(out + "/density_ratio.csv", {"center_x", "center_y", "r", "E_r_x", "mu_ratio"});
    double Emin = 1e300, Emax = -1e300;
    for (const auto& s : scans)
        for (std::size_t i = 0; i < s.radii.size(); ++i) {
            dr.row({s.center[0], s.center[1], s.radii[i], s.E[i], s.mu_ratio[i]});
            Emin = std::min(Emin, s.E[i]);
            Emax = std::max(Emax, s.E[i]);
        }
    dr.close();

    std::vector<double> mono_radii;
    for (double r = 0.08; r <= 0.321; r += 0.02) mono_radii.push_back(r);
    MonotonicityReport mono = monotonicity_check(state, {0, 0, 0}, mono_radii);
    CsvWriter mc(out + "/monotonicity.csv",
                 {"r", "lhs", "defect_term", "sphere_term", "advect_term", "residual"});
    for (std::size_t i = 0; i < mono.radii.size(); ++i)
        mc.row({mono.radii[i], mono.lhs[i], mono.defect_term[i], mono.sphere_term[i],
                mono.advect_term[i], mono.residual[i]});
    mc.close();

    EquipartitionNorms eq = equipartition_norms(state, {-0.3, -0.3, 0}, {0.3, 0.3, 0});
    std::vector<std::array<double, 3>> theta_centers{{0.0, 0.0, 0.0}};
    auto theta = density_estimate(state, theta_centers, std::max(5.0 * cfg.epsilon, 0.15), sigma);

    write_snapshot_file(out + "/u.pfield", state.u);
    write_json(out + "/report.json",
               json{{"experiment", "line-2d"},
                    {"epsilon", state.epsilon},
                    {"sigma", sigma},
                    {"E_window", json{{"min", Emin}, {"max", Emax}}},
                    {"two_sigma", 2.0 * sigma},
                    {"equipartition",
                     json{{"xi_l1", eq.xi_l1},
                          {"grad_gap_l1", eq.grad_gap_l1},
                          {"well_gap_l1", eq.well_gap_l1}}},
                    {"theta_estimate", theta},
                    {"solve", solve_report_json(rep)}});
}

json circle_diagnostics(const ExperimentConfig& cfg, const PhaseState& state,
                        const std::string& out, double sigma) {
    InterfacePolyline poly = extract_interface(state);
    polyline_curvature(poly);
    std::array<double, 2> ctr2 = poly.centroid();
    double rad_mean = 0.0, rad_min = 1e300, rad_max = -1e300;
    for (const auto& v : poly.vertices) {
        double r = std::hypot(v[0] - ctr2[0], v[1] - ctr2[1]);
        rad_mean += r;
        rad_min = std::min(rad_min, r);
        rad_max = std::max(rad_max, r);
    }
    if (!poly.vertices.empty()) rad_mean /= poly.vertices.size();

    CurvatureComparison cc = curvature_comparison(poly, state.v, cfg.p);

    CsvWriter ic(out + "/interface.csv", {"x", "y", "nx", "ny", "kappa", "defect"});
    for (std::size_t i = 0; i < poly.vertices.size(); ++i)
        ic.row({poly.vertices[i][0], poly.vertices[i][1], poly.normals[i][0], poly.normals[i][1],
                poly.kappa[i], cc.defect[i]});
    ic.close();

    // first variation against deterministic random test fields
    CsvWriter fv(out + "/first_variation.csv",
                 {"index", "deltaV", "curvature_pairing", "defect", "mass", "max_grad_g",
                  "normalized_defect"});
    double fv_worst = 0.0, fv_mean = 0.0;
    const int nfields = 10;
    for (int t = 0; t < nfields; ++t) {
        VectorField gf = random_test_field(state.grid, cfg.probe_seed, t);
        FirstVariationReport fr = first_variation(state, gf, sigma);
        double normalized = fr.defect / (fr.mass * std::max(fr.max_grad_g, 1e-30));
        fv.row({static_cast<double>(t), fr.deltaV, fr.curvature_pairing, fr.defect, fr.mass,
                fr.max_grad_g, normalized});
        fv_worst = std::max(fv_worst, normalized);
        fv_mean += normalized / nfields;
    }
    fv.close();

    double margin = 0.15 * (state.grid.hi(0) - state.grid.lo(0));
    std::array<double, 3> wlo{state.grid.lo(0) + margin, state.grid.lo(1) + margin, 0};
    std::array<double, 3> whi{state.grid.hi(0) - margin, state.grid.hi(1) - margin, 0};
    EquipartitionNorms eq = equipartition_norms(state, wlo, whi);

    std::array<double, 3> ctr{0.5 * (state.grid.lo(0) + state.grid.hi(0)),
                              0.5 * (state.grid.lo(1) + state.grid.hi(1)), 0};
    ScalarField phi = sample(state.grid, [&](std::array<double, 3> x) {
        double r = std::hypot(x[0] - ctr[0], x[1] - ctr[1]);
        double t = 1.0 - (r - 0.5) * (r - 0.5) / (0.15 * 0.15);
        t = std::max(t, 0.0);
        return t * t;
    });
    HalvingReport hv = halving_check(state, phi, sigma);

    std::vector<std::array<double, 3>> theta_centers{{ctr[0] + rad_mean, ctr[1], 0}};
    double tr = std::max(5.0 * state.epsilon, 0.12);
    auto theta = density_estimate(state, theta_centers, tr, sigma);

    return json{{"interface",
                 json{{"vertices", poly.vertices.size()},
                      {"closed", poly.closed},
                      {"components", poly.components_found},
                      {"radius_mean", rad_mean},
                      {"radius_min", rad_min},
                      {"radius_max", rad_max},
                      {"length", poly.length()},
                      {"inward_normal_consistent", poly.inward_normal_consistent}}},
                {"curvature",
                 json{{"mean_defect", cc.mean_defect},
                      {"lq_mean", cc.lq_mean},
                      {"q", cc.q},
                      {"vline_integral_q", cc.vline_integral}}},
                {"first_variation",
                 json{{"mean_normalized_defect", fv_mean}, {"max_normalized_defect", fv_worst}}},
                {"equipartition",
                 json{{"xi_l1", eq.xi_l1},
                      {"grad_gap_l1", eq.grad_gap_l1},
                      {"well_gap_l1", eq.well_gap_l1}}},
                {"halving",
                 json{{"grad_half", hv.grad_half},
                      {"well_half", hv.well_half},
                      {"w_mass", hv.w_mass},
                      {"max_pairwise_gap", hv.max_pairwise_gap}}},
                {"theta_estimate", theta}};
}

void run_circle(const ExperimentConfig& cfg0, const std::string& out) {
    ExperimentConfig cfg = cfg0;
    if (cfg.rho.empty()) cfg.rho = "quadratic:-2";
    DoubleWell well = well_from_config(cfg);
    GridSpec grid = GridSpec::square(cfg.resolved_cells, cfg.resolved_lo, cfg.resolved_hi);
    std::array<double, 3> ctr{0.5 * (grid.lo(0) + grid.hi(0)), 0.5 * (grid.lo(1) + grid.hi(1)), 0};
    const double k = std::sqrt(2.0) / cfg.epsilon;
    ScalarField u0 = sample(grid, [&](std::array<double, 3> x) {
        double r = std::hypot(x[0] - ctr[0], x[1] - ctr[1]);
        return std::tanh(k * (r - 0.5));
    });
    PhaseState init = make_state(cfg, grid, std::move(u0), well);
    auto [state, rep] = newton_solve(init, cfg.epsilon, cfg.tol, solver_options(cfg));
    const double sigma = sigma_constant(well).sigma;

    json diag = circle_diagnostics(cfg, state, out, sigma);
    diag["experiment"] = "circle-pmc";
    diag["epsilon"] = state.epsilon;
    diag["sigma"] = sigma;
    diag["solve"] = solve_report_json(rep);
    write_snapshot_file(out + "/u.pfield", state.u);
    write_json(out + "/report.json", diag);
}

void run_minmax(const ExperimentConfig& cfg, const std::string& out, int dim) {
    DoubleWell well = well_from_config(cfg);
    GridSpec grid = dim == 1 ? GridSpec::line(cfg.resolved_cells, cfg.resolved_lo, cfg.resolved_hi)
                             : GridSpec::square(cfg.resolved_cells, cfg.resolved_lo, cfg.resolved_hi);
    std::optional<ScalarField> rho;
    if (!cfg.rho.empty()) rho = rho_from_spec(grid, cfg.rho);

    PathOfStates path = init_path(grid, cfg.path_nodes, parse_seeding(cfg.path_seeding),
                                  cfg.epsilon, well, rho);
    RelaxOptions ro;
    ro.cfl = cfg.cfl;
    ro.max_sweeps = cfg.sweeps;
    auto [relaxed, rep] = relax_path(path, cfg.sweeps, ro);

    SolverOptions so = solver_options(cfg);
    auto [saddle, srep] = refine_saddle(relaxed, 1e-6, so);
    rep.saddle_residual = srep.residual_norm;
    ProbeReport probes = morse_probe(saddle, cfg.probe_count, cfg.probe_seed);
    rep.saddle_index_estimate = probes.descent_directions;

    const double sigma = sigma_constant(well).sigma;
    double Fsaddle = weighted_energy(saddle.u, saddle.epsilon, well,
                                     saddle.rho ? &*saddle.rho : nullptr);

    CsvWriter hist(out + "/history.csv", {"sweep", "max_node_F"});
    for (std::size_t i = 0; i < rep.history.size(); ++i)
        hist.row({static_cast<double>(i), rep.history[i]});
    hist.close();
    write_snapshot_file(out + "/saddle.pfield", saddle.u);

    write_json(out + "/report.json",
               json{{"experiment", dim == 1 ? "minmax-1d" : "minmax-2d"},
                    {"epsilon", cfg.epsilon},
                    {"sigma", sigma},
                    {"minmax_value", rep.minmax_value},
                    {"sweeps_done", rep.sweeps_done},
                    {"relax_converged", rep.converged},
                    {"saddle_energy", Fsaddle},
                    {"saddle_residual", rep.saddle_residual},
                    {"saddle_min_u", min_value(saddle.u)},
                    {"saddle_max_u", max_value(saddle.u)},
                    {"alpha", well.alpha},
                    {"nontrivial",
                     min_value(saddle.u) < -well.alpha && max_value(saddle.u) > well.alpha},
                    {"probes",
                     json{{"count", cfg.probe_count},
                          {"negative_quotients", probes.negative_quotients},
                          {"descent_directions", probes.descent_directions}}},
                    {"refine", solve_report_json(srep)}});
}

void run_sweep(const ExperimentConfig& cfg, const std::string& out) {
    json trend = json::array();
    CsvWriter tc(out + "/trends.csv",
                 {"epsilon", "cells", "xi_l1", "grad_gap_l1", "well_gap_l1", "halving_gap",
                  "fv_mean_defect", "radius_mean", "curv_mean_defect"});
    for (double eps : cfg.eps_ladder) {
        ExperimentConfig rung = cfg;
        rung.experiment = "circle-pmc";
        rung.epsilon = eps;
        rung.cells = cfg.cells != 0 ? cfg.cells
                                    : sweep_cells_policy(eps, cfg.resolved_hi - cfg.resolved_lo);
        rung.eps_ladder.clear();
        char sub[64];
        std::snprintf(sub, sizeof sub, "%s/eps_%g", out.c_str(), eps);
        ensure_directory(sub);
        rung.out_dir = sub;
        finalize_config(rung);
        run_experiment(rung, sub);
        // pull the rung numbers back for the trends table
        std::ifstream is(std::string(sub) + "/report.json");
        json j = json::parse(is);
        tc.row({eps, static_cast<double>(rung.resolved_cells),
                j["equipartition"]["xi_l1"].get<double>(),
                j["equipartition"]["grad_gap_l1"].get<double>(),
                j["equipartition"]["well_gap_l1"].get<double>(),
                j["halving"]["max_pairwise_gap"].get<double>(),
                j["first_variation"]["mean_normalized_defect"].get<double>(),
                j["interface"]["radius_mean"].get<double>(),
                j["curvature"]["mean_defect"].get<double>()});
        j["epsilon"] = eps;
        trend.push_back(j);
    }
    tc.close();
    write_json(out + "/report.json", json{{"experiment", "sweep"}, {"rungs", trend}});
}

} // namespace

void run_experiment(const ExperimentConfig& cfg0, const std::string& out) {
    ExperimentConfig cfg = cfg0;
    int dim = finalize_config(cfg);
    if (cfg.threads > 0) set_thread_count(cfg.threads);
    ensure_directory(out);
    if (cfg.experiment == "standing-wave") run_standing_wave(cfg, out);
    else if (cfg.experiment == "line-2d") run_line2d(cfg, out);
    else if (cfg.experiment == "circle-pmc") run_circle(cfg, out);
    else if (cfg.experiment == "minmax-1d") run_minmax(cfg, out, 1);
    else if (cfg.experiment == "minmax-2d") run_minmax(cfg, out, dim);
    else if (cfg.experiment == "sweep") run_sweep(cfg, out);
    else throw Error("run: unknown experiment '" + cfg.experiment + "'");
}

} // namespace pflab
