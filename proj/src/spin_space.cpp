#include "qbatt/spin_space.hpp"

#include <cmath>
#include <stdexcept>

namespace qbatt {

SpinSpace::SpinSpace(int n) : n_atoms(n), dim(n + 1) {
    if (n < 1) {
        throw std::invalid_argument("SpinSpace: n_atoms must be >= 1");
    }
}

namespace {

// <s, m+1 | J+ | s, m> = sqrt(s(s+1) - m(m+1))
double ladder_up(double s, double m) {
    return std::sqrt(s * (s + 1.0) - m * (m + 1.0));
}

} // namespace

Operator build_jx(const SpinSpace& space) {
    Operator jx = Operator::Zero(space.dim, space.dim);
    const double s = space.spin();
    for (int k = 0; k + 1 < space.dim; ++k) {
        const double c = 0.5 * ladder_up(s, space.m_of(k));
        jx(k + 1, k) = c;
        jx(k, k + 1) = c;
    }
    return jx;
}

Operator build_jy(const SpinSpace& space) {
    Operator jy = Operator::Zero(space.dim, space.dim);
    const double s = space.spin();
    for (int k = 0; k + 1 < space.dim; ++k) {
        const double c = 0.5 * ladder_up(s, space.m_of(k));
        jy(k + 1, k) = std::complex<double>(0.0, -c);
        jy(k, k + 1) = std::complex<double>(0.0, c);
    }
    return jy;
}

Operator build_jz(const SpinSpace& space) {
    Operator jz = Operator::Zero(space.dim, space.dim);
    for (int k = 0; k < space.dim; ++k) {
        jz(k, k) = space.m_of(k);
    }
    return jz;
}

Operator build_jz2(const SpinSpace& space) {
    Operator jz2 = Operator::Zero(space.dim, space.dim);
    for (int k = 0; k < space.dim; ++k) {
        const double m = space.m_of(k);
        jz2(k, k) = m * m;
    }
    return jz2;
}

StateVector uncharged_state(const SpinSpace& space) {
    StateVector psi = StateVector::Zero(space.dim);
    psi(0) = 1.0;
    return psi;
}

} // namespace qbatt
