#pragma once

#include <string>
#include <vector>

#include "qbatt/metrics.hpp"
#include "qbatt/run_config.hpp"

namespace qbatt {

/// Closed-form observable series on an explicit time grid (backend
/// "analytic"). For N = 1 the entropy column falls back to a numeric run
/// (the closed form is undefined there); every other column stays analytic.
MetricSeries analytic_metric_series(const ModelParams& p, const std::vector<double>& times);

/// Command entry points shared by the CLI and the test suites. Each returns
/// the list of files it wrote.
std::vector<std::string> cmd_evolve(const RunConfig& cfg);
std::vector<std::string> cmd_sweep2d(const RunConfig& cfg);
std::vector<std::string> cmd_spectrum(const RunConfig& cfg);
std::vector<std::string> cmd_scaling(const RunConfig& cfg);

/// Dispatch on cfg.command ("compare" is evolve with backend forced to
/// "both").
std::vector<std::string> run_command(const RunConfig& cfg);

} // namespace qbatt
