#pragma once

#include <array>
#include <numbers>

#include "qbatt/model.hpp"

namespace qbatt {

/// Tilt angle of the rotating frame in which the driven Hamiltonian becomes
/// integrable term by term: mu(t) = pi - v0 t/2 + (v0 T / 4 pi) sin(2 pi t/T).
/// mu(0) = pi, mu is non-increasing, mu(T) = pi - v0 T / 2.
double gauge_angle(const ModelParams& p, double t);

/// d mu / dt = -v0 sin^2(pi t / T) = -drive_amplitude(p, t).
double gauge_angle_rate(const ModelParams& p, double t);

/// Second frame rotation angle; constant by construction.
inline constexpr double kGaugeTiltNu = std::numbers::pi;

/// Integration constants of the rotated-frame evolution. b1, b4..b7 and b10
/// vanish identically; b8 == b9 by construction. All are finite for every
/// v0 T > 0: the apparent poles at v0 T = 4 pi (b2, b3) and v0 T = 2 pi
/// (b8, b9, b11, b12) are removable and handled by local expansions.
struct BesselCoeffs {
    double b2 = 0.0;
    double b3 = 0.0;
    double b8 = 0.0;
    double b9 = 0.0;
    double b11 = 0.0;
    double b12 = 0.0;
};

BesselCoeffs bessel_coefficients(const ModelParams& p);

/// Coefficients of the twice-rotated Hamiltonian on the operator basis
/// [Jx, Jy, Jz, JxJy, JyJx, JxJz, JzJx, JyJz, JzJy, Jx^2, Jy^2, Jz^2],
/// stored as a[0..11]. With nu = pi and mu from gauge_angle, a[0] vanishes
/// (that condition defines mu) and a[3..6], a[9] vanish with sin(nu).
struct RotatedHamiltonianCoeffs {
    std::array<double, 12> a{};
};

RotatedHamiltonianCoeffs rotated_hamiltonian_coeffs(const ModelParams& p, double t);

/// Coefficients of the twice-rotated Jz^2 on the product basis
/// [JxJy, JyJx, JxJz, JzJx, JyJz, JzJy, Jx^2, Jy^2, Jz^2], stored c[0..8].
/// With nu = pi: c[0..3] and c[6] vanish, c[7] = sin^2 mu, c[8] = cos^2 mu.
struct RotatedJzSquaredCoeffs {
    std::array<double, 9> c{};
};

RotatedJzSquaredCoeffs rotated_jz2_coeffs(const ModelParams& p, double t);

// Closed-form observables of the driven battery, valid on 0 <= t <= T.
double analytic_stored_energy(const ModelParams& p, double t);
double analytic_average_power(const ModelParams& p, double t);
double analytic_instantaneous_power(const ModelParams& p, double t);
/// sqrt(N delta/4 - (E - N delta/2)^2 / N); radicand below -1e-10 throws
/// std::domain_error, tiny negative values clamp to zero.
double analytic_fluctuation(const ModelParams& p, double t);
/// |sin mu| log2[ sqrt((N-1) e^{pi/2}) (1 - b8 b9 (b2 cos mu - b3 sin mu)) ].
/// Requires N >= 2 (the prefactor degenerates at N = 1; use the numeric
/// backend there). Throws std::domain_error if the log argument is <= 0.
double analytic_diagonal_entropy(const ModelParams& p, double t);

/// Peak stored energy over the window: (N delta/2)(1 - cos(v0 T/2)) for
/// v0 T < 2 pi, and exactly N delta once v0 T >= 2 pi (full charging).
double max_stored_energy(const ModelParams& p);

/// Earliest time at which the peak is reached: T when v0 T < 2 pi, else the
/// first root of v0 t/2 - (v0 T/4 pi) sin(2 pi t/T) = pi, found by bisection
/// (the left side is non-decreasing) to 1e-12 * T.
double time_of_max_energy(const ModelParams& p);

// End-of-charge values at t = tau = T.
double final_stored_energy(const ModelParams& p);
double final_fluctuation(const ModelParams& p);
double final_diagonal_entropy(const ModelParams& p);  // requires N >= 2

} // namespace qbatt
