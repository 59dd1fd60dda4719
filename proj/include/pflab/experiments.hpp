// experiments.hpp
// Named batch experiments: solve, run the diagnostics, write CSV/JSON
// reports and field snapshots into an output directory.

#ifndef PFLAB_EXPERIMENTS_HPP
#define PFLAB_EXPERIMENTS_HPP

#include "pflab/config.hpp"
#include "pflab/state.hpp"

namespace pflab {

enum class ExitCode : int { Ok = 0, Validation = 2, Solver = 3, Io = 4 };

// Runs cfg.experiment end to end. Assumes validate_config passed; throws
// SolveFailure (solver stall) and Error (I/O and internal failures).
void run_experiment(const ExperimentConfig& cfg, const std::string& out_dir);

// Output root: cfg.out_dir, else $PFLAB_OUT_ROOT/<experiment>, else
// ./pflab-out/<experiment>.
std::string resolve_out_dir(const ExperimentConfig& cfg);

// Shared builders (also used by the acceptance suite).
DoubleWell well_from_config(const ExperimentConfig& cfg);
ScalarField rho_from_spec(const GridSpec& grid, const std::string& spec);
VectorField velocity_from_spec(const GridSpec& grid, const std::string& spec);

// Deterministic smooth compactly supported test fields for the first
// variation (index selects the field, all derived from `seed`).
VectorField random_test_field(const GridSpec& grid, unsigned long seed, int index);

} // namespace pflab

#endif
