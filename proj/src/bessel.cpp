#include "qbatt/bessel.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace qbatt {

namespace {

// J0(x) = sum_k (-1)^k (x^2/4)^k / (k!)^2
// J1(x) = (x/2) sum_k (-1)^k (x^2/4)^k / (k! (k+1)!)
// Accumulated in long double; the largest term at |x| = 12 is ~4e3, so the
// extended-precision accumulation keeps the alternating-sum cancellation
// well below the 1e-12 budget.
long double series_j(int order, long double x) {
    const long double q = 0.25L * x * x;
    long double term = (order == 0) ? 1.0L : 0.5L * x;
    long double sum = term;
    for (int k = 1; k <= 120; ++k) {
        term *= -q / (static_cast<long double>(k) * (k + order));
        sum += term;
        if (std::fabs(term) < 1e-24L * std::fabs(sum) + 1e-40L) break;
    }
    return sum;
}

// Miller downward recurrence: J_{n-1}(x) = (2n/x) J_n(x) - J_{n+1}(x),
// normalized with J0 + 2 J2 + 2 J4 + ... = 1. Stable for x > 0.
void miller_j01(long double x, long double& j0, long double& j1) {
    const int start = 2 * (static_cast<int>(x + 1.0L) / 2) + 52;
    long double jp = 0.0L;   // J_{n+1}
    long double jc = 1e-30L; // J_n
    long double norm = 0.0L;
    long double out0 = 0.0L, out1 = 0.0L;
    for (int n = start; n >= 1; --n) {
        const long double jm = (2.0L * n / x) * jc - jp;
        jp = jc;
        jc = jm;
        if (n - 1 == 0) out0 = jc;
        if (n - 1 == 1) out1 = jc;
        if ((n - 1) % 2 == 0) norm += (n - 1 == 0) ? jc : 2.0L * jc;
        // rescale to avoid overflow of the unnormalized recurrence
        if (std::fabs(jc) > 1e20L) {
            jp /= 1e20L;
            jc /= 1e20L;
            norm /= 1e20L;
            out0 /= 1e20L;
            out1 /= 1e20L;
        }
    }
    j0 = out0 / norm;
    j1 = out1 / norm;
}

} // namespace

double bessel_j(int order, double x) {
    if (order != 0 && order != 1) {
        throw std::invalid_argument("bessel_j: order must be 0 or 1");
    }
    const double ax = std::fabs(x);
    long double value;
    if (ax <= 12.0) {
        value = series_j(order, ax);
    } else {
        long double j0, j1;
        miller_j01(static_cast<long double>(ax), j0, j1);
        value = (order == 0) ? j0 : j1;
    }
    // parity: J0 even, J1 odd
    if (order == 1 && x < 0.0) value = -value;
    return static_cast<double>(value);
}

} // namespace qbatt
