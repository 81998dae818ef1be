#include "oracle_helpers.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace oracle {

namespace {

int popcount(unsigned v) {
    int c = 0;
    for (; v; v >>= 1) c += static_cast<int>(v & 1u);
    return c;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
    return r;
}

} // namespace

Eigen::MatrixXcd collective_operator(int n_atoms, char alpha) {
    if (n_atoms < 1 || n_atoms > 12) {
        throw std::invalid_argument("collective_operator: N out of brute-force range");
    }
    const unsigned dim_full = 1u << n_atoms;
    const std::complex<double> I(0.0, 1.0);

    // J acts on product states; build it column by column from single-site
    // Pauli action (bit set = excited). sigma^z|0> = -|0>, sigma^z|1> = +|1>;
    // sigma^x flips; sigma^y flips with a phase.
    Eigen::MatrixXcd j_full = Eigen::MatrixXcd::Zero(dim_full, dim_full);
    for (unsigned col = 0; col < dim_full; ++col) {
        for (int site = 0; site < n_atoms; ++site) {
            const bool up = (col >> site) & 1u;
            switch (alpha) {
                case 'z':
                    j_full(col, col) += up ? 0.5 : -0.5;
                    break;
                case 'x':
                    j_full(col ^ (1u << site), col) += 0.5;
                    break;
                case 'y':
                    // sigma^y |up> = i |down>, sigma^y |down> = -i |up>
                    j_full(col ^ (1u << site), col) += up ? 0.5 * I : -0.5 * I;
                    break;
                default:
                    throw std::invalid_argument("collective_operator: bad alpha");
            }
        }
    }

    // symmetric basis vectors w_k = (sum of all |S|=k patterns) / sqrt(C(N,k))
    Eigen::MatrixXcd sym = Eigen::MatrixXcd::Zero(dim_full, n_atoms + 1);
    for (unsigned pattern = 0; pattern < dim_full; ++pattern) {
        sym(pattern, popcount(pattern)) += 1.0;
    }
    for (int k = 0; k <= n_atoms; ++k) {
        sym.col(k) /= std::sqrt(binom(n_atoms, k));
    }
    return sym.adjoint() * j_full * sym;
}

Eigen::MatrixXcd expm_taylor(const Eigen::MatrixXcd& a) {
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
    int squarings = 0;
    double scale = 1.0;
    while (norm * scale > 0.5) {
        scale *= 0.5;
        ++squarings;
    }
    const Eigen::MatrixXcd b = a * scale;
    Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(a.rows(), a.cols());
    Eigen::MatrixXcd sum = term;
    for (int k = 1; k <= 40; ++k) {
        term = (term * b) / static_cast<double>(k);
        sum += term;
        if (term.cwiseAbs().maxCoeff() < 1e-20) break;
    }
    for (int s = 0; s < squarings; ++s) sum = sum * sum;
    return sum;
}

Eigen::VectorXcd rk4_evolve(const qbatt::ModelParams& p, double t_end, int steps) {
    const qbatt::SpinSpace space(p.n_atoms);
    const std::complex<double> minus_i(0.0, -1.0);
    auto rhs = [&](double t, const Eigen::VectorXcd& psi) -> Eigen::VectorXcd {
        return minus_i * (qbatt::hamiltonian_at(p, space, t).h * psi);
    };
    Eigen::VectorXcd psi = qbatt::uncharged_state(space);
    const double h = t_end / steps;
    for (int k = 0; k < steps; ++k) {
        const double t = k * h;
        const Eigen::VectorXcd k1 = rhs(t, psi);
        const Eigen::VectorXcd k2 = rhs(t + 0.5 * h, psi + 0.5 * h * k1);
        const Eigen::VectorXcd k3 = rhs(t + 0.5 * h, psi + 0.5 * h * k2);
        const Eigen::VectorXcd k4 = rhs(t + h, psi + h * k3);
        psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return psi;
}

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n % 2 != 0) ++n;
    const double h = (b - a) / n;
    double acc = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    }
    return acc * h / 3.0;
}

ExtractResult extract_coefficients(const Eigen::MatrixXcd& m,
                                   const std::vector<Eigen::MatrixXcd>& basis) {
    const Eigen::Index entries = m.size();
    Eigen::MatrixXd a(2 * entries, static_cast<Eigen::Index>(basis.size()));
    Eigen::VectorXd rhs(2 * entries);
    for (Eigen::Index e = 0; e < entries; ++e) {
        rhs(2 * e) = m.reshaped()(e).real();
        rhs(2 * e + 1) = m.reshaped()(e).imag();
        for (std::size_t b = 0; b < basis.size(); ++b) {
            a(2 * e, static_cast<Eigen::Index>(b)) = basis[b].reshaped()(e).real();
            a(2 * e + 1, static_cast<Eigen::Index>(b)) = basis[b].reshaped()(e).imag();
        }
    }
    ExtractResult out;
    out.coeffs = a.colPivHouseholderQr().solve(rhs);
    out.residual = (a * out.coeffs - rhs).norm();
    return out;
}

double inverse_iteration_eigenvalue(const Eigen::MatrixXd& h, double shift, int iters) {
    const Eigen::Index n = h.rows();
    Eigen::MatrixXd shifted = h;
    shifted.diagonal().array() -= shift;
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(shifted);
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n).normalized();
    for (int k = 0; k < iters; ++k) {
        x = lu.solve(x);
        const double nx = x.norm();
        if (!(nx > 0.0) || !std::isfinite(nx)) break;  // shift hit an eigenvalue
        x /= nx;
    }
    return x.dot(h * x);
}

} // namespace oracle
