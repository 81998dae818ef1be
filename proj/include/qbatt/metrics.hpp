#pragma once

#include <string>
#include <vector>

#include "qbatt/model.hpp"
#include "qbatt/propagator.hpp"

namespace qbatt {

/// Time-indexed battery observables. Energies in hbar*omega0, powers in
/// hbar*omega0^2, entropies in bits (log base 2).
struct MetricSeries {
    std::vector<double> times;
    std::vector<double> energy;        // E(t), relative to the uncharged floor
    std::vector<double> avg_power;     // P(t) = E(t)/t, P(0) = 0
    std::vector<double> inst_power;    // P_I(t) = tr[H0 d rho/dt]
    std::vector<double> fluctuation;   // Sigma(t)
    std::vector<double> s_diag;        // diagonal (Shannon) entropy
    std::vector<double> s_vn;          // von Neumann entropy of the full state
    std::vector<double> coherence;     // relative entropy of coherence
    std::string backend;               // "numeric" or "analytic"
    ModelParams params;
};

/// E = delta <Jz> + N delta / 2 (the uncharged floor is subtracted).
double stored_energy(const StateVector& state, const ModelParams& p);

/// P(t) = E(t)/t with P(0) := 0 (E starts cubically, so the limit is 0).
std::vector<double> average_power(const std::vector<double>& times,
                                  const std::vector<double>& energy);

/// tr[H0 d rho/dt] evaluated exactly as -i tr(H0 [H(t), rho]);
/// positive values mean charger-to-battery flow.
double instantaneous_power(const StateVector& state, const ModelParams& p, double t);

/// sqrt(<H0^2> - <H0>^2). Variances in (-1e-12, 0) clamp to zero;
/// anything more negative throws std::domain_error.
double fluctuation(const StateVector& state, const ModelParams& p);

/// -sum_k p_k log2 p_k over the level populations, with 0 log 0 = 0.
double diagonal_entropy(const StateVector& state);

/// Von Neumann entropy of |psi><psi| computed from the spectrum of the
/// projector; vanishes (to roundoff) for every pure state.
double von_neumann_entropy(const StateVector& state);

/// Observables for every stored snapshot of a trajectory (backend "numeric").
/// with_svn = false skips the O(dim^3) von Neumann column for bulk sweeps.
MetricSeries metric_series(const Trajectory& traj, bool with_svn = true);

void write_metric_series_csv(const MetricSeries& series, const std::string& path,
                             const std::string& config_json);

} // namespace qbatt
