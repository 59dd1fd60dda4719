// config.hpp
// Flat key=value experiment configuration with command-line overrides.

#ifndef PFLAB_CONFIG_HPP
#define PFLAB_CONFIG_HPP

#include <map>
#include <string>
#include <vector>

#include "pflab/error.hpp"

namespace pflab {

// key=value pairs; '#' starts a comment; later assignments win.
std::map<std::string, std::string> parse_config_text(const std::string& text);
std::map<std::string, std::string> parse_config_file(const std::string& path);

struct ExperimentConfig {
    std::string experiment;          // standing-wave|line-2d|circle-pmc|minmax-1d|minmax-2d|sweep
    double epsilon = 0.05;
    std::vector<double> eps_ladder;  // for sweep
    int cells = 0;                   // 0 = per-experiment default
    double domain_lo = 0.0, domain_hi = 0.0; // 0,0 = per-experiment default
    double p = 0.0;                  // 0 = auto: 0.75 in 1D, 1.5 in 2D
    std::string well = "quartic";    // quartic | file:<path>
    std::string rho = "";            // "" | quadratic:<c> | affine:<a0,a1,..> | snapshot:<path>
    std::string velocity = "";       // "" | constant:<v0,v1,..> | snapshot-prefix:<path>
    std::string out_dir = "";
    unsigned long probe_seed = 2026;
    int probe_count = 50;
    int path_nodes = 32;
    std::string path_seeding = "sweep";
    int sweeps = 400;
    double tol = 1e-8;
    int max_newton = 100;
    double continuation_factor = 1.4142135623730951;
    int relax_steps = 5;
    double cfl = 0.5;
    bool stabilization_auto = true;
    double stabilization = 8.0;
    bool allow_h_over_eps8 = false;  // line-2d geometry needs h up to eps/4
    int threads = 0;                 // 0 = library default

    // filled by finalize(): grid cells/extents per the experiment defaults
    int resolved_cells = 0;
    double resolved_lo = 0.0, resolved_hi = 0.0;
};

// Builds a config from parsed pairs; unknown keys are an error.
ExperimentConfig make_config(const std::map<std::string, std::string>& kv);

struct ValidationFinding {
    std::string key;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationFinding> findings;
    bool passed() const { return findings.empty(); }
};

// Checks the invariants (h vs eps per ladder entry, n/2 < p < n, well
// hypotheses, seeding name, ...). Does not run anything.
ValidationReport validate_config(const ExperimentConfig& cfg);

// Applies per-experiment defaults (grid size, domain) and returns the grid
// dimensionality of the experiment.
int finalize_config(ExperimentConfig& cfg);

int experiment_dim(const std::string& name);
// Cells for a sweep rung: resolution tied to eps^{3/2}.
int sweep_cells_policy(double eps, double length);

} // namespace pflab

#endif
