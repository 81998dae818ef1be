#pragma once

#include <string>
#include <vector>

#include "qbatt/model.hpp"
#include "qbatt/spin_space.hpp"

namespace qbatt {

struct EvolutionConfig {
    double dt = 0.0;        // base step; <= 0 picks T/4096
    double t_end = -1.0;    // < 0 means tau
    int store_every = 1;    // snapshot stride (the final step is always kept)
    bool auto_refine = true;
    int max_refinements = 12;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
    ModelParams params;
    EvolutionConfig config;
    double dt_used = 0.0;
    double max_norm_drift = 0.0;
};

/// exp(-i H dt) for Hermitian H via real-eigenvalue spectral decomposition.
/// Unitary to machine precision; throws std::runtime_error if the
/// eigensolver fails.
Operator expm_hermitian(const Operator& h, double dt);

/// Midpoint-exponential integration of i d/dt |psi> = H(t) |psi> from the
/// uncharged state: psi(t+dt) = exp(-i H(t+dt/2) dt) psi(t). Steps are
/// exactly unitary, so norm drift is pure roundoff (asserted < 1e-9).
/// The base step is halved until dt * max_t ||H||_2 <= 0.5 and, when
/// auto_refine is set, a dt vs dt/2 terminal-state distance of 1e-8 holds.
Trajectory evolve(const ModelParams& p, const SpinSpace& space, const EvolutionConfig& cfg);

/// Rank-1 projector |psi><psi|.
Operator density_matrix(const StateVector& state);

namespace detail {
/// Process-wide count of evolve() invocations; lets callers assert that a
/// pure closed-form path never touched the integrator.
long evolve_invocation_count();
} // namespace detail

/// Plain-text export: t plus interleaved Re/Im amplitudes per basis level;
/// the header records the basis ordering and parameters.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

} // namespace qbatt
