#pragma once

#include <Eigen/Dense>

#include "qbatt/spin_space.hpp"

namespace qbatt {

/// Physical parameters in units hbar = omega0 = 1 (so delta defaults to 1).
/// lambda is the scaled interaction eta/delta; v0 and t_period enter through
/// the dimensionless combinations v0/delta and omega0*T.
struct ModelParams {
    int n_atoms = 1;
    double delta = 1.0;     // level gap, hbar*omega0
    double lambda = 0.0;    // eta/delta; repulsive > 0, attractive < 0
    double v0 = 0.0;        // drive strength
    double t_period = 0.0;  // scan period T, units 1/omega0
    double tau = -1.0;      // charge window [0, tau]; < 0 means tau = T

    double charge_window_end() const { return tau < 0.0 ? t_period : tau; }
    void validate() const;  // throws std::invalid_argument
};

/// Drive envelope: v0 sin^2(pi t / T) on [0, T], zero outside. C1 at both ends.
double drive_amplitude(const ModelParams& p, double t);

/// d/dt of the drive envelope, v0 (pi/T) sin(2 pi t / T) inside the window.
double drive_amplitude_rate(const ModelParams& p, double t);

struct HamiltonianSnapshot {
    double time = 0.0;
    Operator h;   // full H(t)
    Operator h0;  // static part delta * Jz
};

/// H(t) = delta Jz + theta(t) [ f(t) Jx + (2 lambda delta / N) Jz^2 ],
/// with theta = 1 on [0, tau] and 0 elsewhere.
HamiltonianSnapshot hamiltonian_at(const ModelParams& p, const SpinSpace& space, double t);

/// <psi(0)| H0 |psi(0)> = -N delta / 2, the subtracted energy reference.
double h0_expectation_floor(const ModelParams& p);

/// Tridiagonal storage of H(t): inside the charge window the diagonal is
/// level(k) = delta*m + (2 lambda delta/N) m^2 and the sub-diagonal is
/// f(t) * coupling(k) (unit-drive Jx elements); outside it the diagonal
/// falls back to level_free(k) = delta*m with no coupling.
struct TridiagonalModel {
    Eigen::VectorXd level;
    Eigen::VectorXd level_free;
    Eigen::VectorXd coupling;
};

TridiagonalModel build_tridiagonal(const ModelParams& p);

} // namespace qbatt
