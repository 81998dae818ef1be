#pragma once

namespace qbatt {

/// Bessel functions of the first kind, orders 0 and 1, self-contained.
/// Power series for |x| <= 12, downward (Miller) recurrence beyond.
/// Absolute error < 1e-12 over the range of use (|x| < 50).
double bessel_j(int order, double x);

inline double bessel_j0(double x) { return bessel_j(0, x); }
inline double bessel_j1(double x) { return bessel_j(1, x); }

} // namespace qbatt
