#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbatt/model.hpp"
#include "qbatt/propagator.hpp"
#include "qbatt/sweep.hpp"

namespace qbatt {

/// Raised for malformed or invalid run configuration (CLI exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One JSON document per run; command-specific blocks are optional. CLI
/// flags override the corresponding fields after parsing.
struct RunConfig {
    std::string command;  // evolve | compare | sweep2d | spectrum | scaling
    ModelParams model;
    EvolutionConfig evolution;
    std::string backend = "numeric";  // numeric | analytic | both
    std::string out = "qbatt_run";
    int workers = 1;

    // evolve/compare: analytic sample count when no numeric grid exists
    int time_samples = 1025;
    bool dump_states = false;

    // sweep2d
    Grid1D v0_grid;
    Grid1D t_grid;

    // spectrum
    Grid1D lambda_grid{0.0, 3.0, 61};
    double transverse = 0.0;
    bool join_dynamics = false;

    // scaling
    std::vector<int> n_list;
    std::vector<double> lambda_list;
};

/// Parse + validate a config document. `command` must end up non-empty
/// (either from the document or the CLI subcommand).
RunConfig parse_run_config(const std::string& json_text, const std::string& command);

RunConfig load_run_config(const std::string& path, const std::string& command);

/// Canonical resolved form embedded in output headers; parsing it back
/// reproduces the run.
std::string resolved_config_json(const RunConfig& cfg);

} // namespace qbatt
