#include "qbatt/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qbatt {

namespace {
constexpr double kPi = std::numbers::pi;
}

void ModelParams::validate() const {
    if (n_atoms < 1) throw std::invalid_argument("ModelParams: n_atoms must be >= 1");
    if (!(delta > 0.0)) throw std::invalid_argument("ModelParams: delta must be > 0");
    if (!(t_period > 0.0)) throw std::invalid_argument("ModelParams: t_period must be > 0");
    if (v0 < 0.0) throw std::invalid_argument("ModelParams: v0 must be >= 0");
    if (tau >= 0.0 && !(tau > 0.0)) throw std::invalid_argument("ModelParams: tau must be > 0");
}

double drive_amplitude(const ModelParams& p, double t) {
    if (t < 0.0 || t > p.t_period) return 0.0;
    const double s = std::sin(kPi * t / p.t_period);
    return p.v0 * s * s;
}

double drive_amplitude_rate(const ModelParams& p, double t) {
    if (t < 0.0 || t > p.t_period) return 0.0;
    return p.v0 * (kPi / p.t_period) * std::sin(2.0 * kPi * t / p.t_period);
}

HamiltonianSnapshot hamiltonian_at(const ModelParams& p, const SpinSpace& space, double t) {
    if (space.n_atoms != p.n_atoms) {
        throw std::invalid_argument("hamiltonian_at: space does not match params");
    }
    HamiltonianSnapshot snap;
    snap.time = t;
    snap.h0 = p.delta * build_jz(space);
    snap.h = snap.h0;
    const double tau = p.charge_window_end();
    if (t >= 0.0 && t <= tau) {
        const double f = drive_amplitude(p, t);
        if (f != 0.0) snap.h += f * build_jx(space);
        snap.h += (2.0 * p.lambda * p.delta / p.n_atoms) * build_jz2(space);
    }
    return snap;
}

double h0_expectation_floor(const ModelParams& p) {
    return -0.5 * p.n_atoms * p.delta;
}

TridiagonalModel build_tridiagonal(const ModelParams& p) {
    const SpinSpace space(p.n_atoms);
    TridiagonalModel tri;
    tri.level.resize(space.dim);
    tri.level_free.resize(space.dim);
    const double g = 2.0 * p.lambda * p.delta / p.n_atoms;
    for (int k = 0; k < space.dim; ++k) {
        const double m = space.m_of(k);
        tri.level_free(k) = p.delta * m;
        tri.level(k) = p.delta * m + g * m * m;
    }
    tri.coupling.resize(space.dim - 1);
    const double s = space.spin();
    for (int k = 0; k + 1 < space.dim; ++k) {
        const double m = space.m_of(k);
        tri.coupling(k) = 0.5 * std::sqrt(s * (s + 1.0) - m * (m + 1.0));
    }
    return tri;
}

} // namespace qbatt
