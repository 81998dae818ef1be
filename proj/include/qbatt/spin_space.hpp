#pragma once

#include <Eigen/Dense>

namespace qbatt {

using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// The symmetric (Dicke) sector of N spin-1/2 systems: total spin s = N/2,
/// dimension N+1. Basis index k in {0..N} maps to the projection
/// m = k - N/2, ordered ascending in m; k = 0 is the uncharged level
/// m = -N/2. All other modules rely on this ordering.
struct SpinSpace {
    explicit SpinSpace(int n_atoms);

    int n_atoms;
    int dim;  // n_atoms + 1

    double spin() const { return 0.5 * n_atoms; }
    double m_of(int k) const { return k - 0.5 * n_atoms; }
};

// Dense collective operators on the Dicke basis, dimensionless (hbar = 1).
Operator build_jx(const SpinSpace& space);
Operator build_jy(const SpinSpace& space);
Operator build_jz(const SpinSpace& space);
Operator build_jz2(const SpinSpace& space);

/// |N/2, -N/2>, the fully polarized lowest level.
StateVector uncharged_state(const SpinSpace& space);

} // namespace qbatt
