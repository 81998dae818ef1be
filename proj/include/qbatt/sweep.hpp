#pragma once

#include <functional>
#include <string>
#include <vector>

#include "qbatt/model.hpp"

namespace qbatt {

/// Runs fn(0..count-1) on `workers` threads. Cells write only their own
/// slot, so the result is identical for any worker count; exceptions are
/// rethrown on the calling thread.
void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn);

struct Grid1D {
    double min = 0.0;
    double max = 0.0;
    int steps = 1;

    std::vector<double> values() const;  // steps >= 1; steps == 1 yields {min}
};

/// One sweep cell; unused scalars stay NaN and are omitted per command.
struct SweepCell {
    double v0 = 0.0;
    double t_period = 0.0;
    int n_atoms = 0;
    double lambda = 0.0;
    double e_max = 0.0;
    double e_tau = 0.0;
    double sigma_tau = 0.0;
    double s_tau = 0.0;
    double t_max = 0.0;
    double p_max = 0.0;
    double sigma_max = 0.0;
    double s_max = 0.0;
    bool on_critical_curve = false;  // cell straddles v0 T = 2 pi
    bool on_optimal_curve = false;   // cell straddles v0 T = (4n+2) pi
};

struct SweepResult {
    std::vector<SweepCell> cells;
    std::vector<double> axis_v0;        // sweep2d
    std::vector<double> axis_t_period;  // sweep2d
    std::vector<int> axis_n;            // scaling
    std::vector<double> axis_lambda;    // scaling
    std::string backend;
};

/// Per-cell E_max, E(tau), Sigma(tau), S(tau) and t_max over a (v0, T) grid.
/// backend "analytic" uses the closed forms; "numeric" integrates each cell.
/// Cell order: v0 major, t_period minor.
SweepResult run_sweep2d(const ModelParams& base, const Grid1D& v0_grid,
                        const Grid1D& t_grid, const std::string& backend, int workers,
                        int store_every = 4);

/// Per-(lambda, N) peak scalars E_max, P_max, Sigma_max, S_max from the
/// numeric backend at fixed (v0, T). Cell order: lambda major, N minor.
SweepResult run_scaling(const ModelParams& base, const std::vector<int>& n_list,
                        const std::vector<double>& lambda_list, int workers,
                        int store_every = 4);

void write_sweep2d_csv(const SweepResult& result, const std::string& path,
                       const std::string& config_json);
void write_scaling_csv(const SweepResult& result, const std::string& path,
                       const std::string& config_json);

} // namespace qbatt
