#include "qbatt/propagator.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "qbatt/csv.hpp"

namespace qbatt {

Operator expm_hermitian(const Operator& h, double dt) {
    Eigen::SelfAdjointEigenSolver<Operator> es(h);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("expm_hermitian: eigendecomposition failed");
    }
    const Eigen::VectorXd& w = es.eigenvalues();
    Eigen::VectorXcd phases(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        phases(i) = std::polar(1.0, -w(i) * dt);
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

namespace {

// One trajectory worth of midpoint-exponential stepping. H(t) is real
// symmetric tridiagonal; with the step bound ||H dt|| <= 0.5 enforced, the
// exponential acting on the state is summed as a Taylor series (relative
// term cutoff 1e-18, reached in ~18 tridiagonal mat-vecs), which matches
// the spectral-decomposition kernel to machine precision.  The state is
// carried as split re/im parts so everything stays in real arithmetic.
class Stepper {
  public:
    Stepper(const ModelParams& p, const SpinSpace& space)
        : params_(p), tri_(build_tridiagonal(p)), dim_(space.dim),
          re_(dim_), im_(dim_), tre_(dim_), tim_(dim_), hre_(dim_), him_(dim_) {}

    void reset() {
        re_.setZero();
        im_.setZero();
        re_(0) = 1.0;
    }

    // advances by n steps of size dt starting from t0
    void run(double t0, double dt, long n) {
        for (long k = 0; k < n; ++k) {
            step(t0 + (k + 0.5) * dt, dt);
        }
    }

    void step(double t_mid, double dt) {
        const double tau = params_.charge_window_end();
        const bool in_window = t_mid >= 0.0 && t_mid <= tau;
        const double f = in_window ? drive_amplitude(params_, t_mid) : 0.0;
        const Eigen::VectorXd& diag = in_window ? tri_.level : tri_.level_free;
        const bool coupled = in_window && f != 0.0;

        // term_0 = psi, term_k = (-i H dt / k) term_{k-1}, summed in place
        tre_ = re_;
        tim_ = im_;
        for (int k = 1; k <= 64; ++k) {
            apply_h(diag, coupled ? f : 0.0, coupled);
            const double c = dt / k;
            // (-i c) * (hre + i him) = c*him - i*c*hre
            tre_ = c * him_;
            tim_ = -c * hre_;
            re_ += tre_;
            im_ += tim_;
            if (tre_.squaredNorm() + tim_.squaredNorm() < 1e-36) break;
        }
    }

    StateVector state() const {
        StateVector psi(dim_);
        for (int i = 0; i < dim_; ++i) psi(i) = std::complex<double>(re_(i), im_(i));
        return psi;
    }

    double norm() const { return std::sqrt(re_.squaredNorm() + im_.squaredNorm()); }

    // max_t ||H(t)||_2; the pencil diag + f*sub has its extreme eigenvalues
    // at the drive endpoints f = 0 and f = v0
    double spectral_bound() {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
        double bound = 0.0;
        for (const double f : {0.0, params_.v0}) {
            const Eigen::VectorXd sub = f * tri_.coupling;
            solver.computeFromTridiagonal(tri_.level, sub, Eigen::EigenvaluesOnly);
            if (solver.info() != Eigen::Success) {
                throw std::runtime_error("evolve: eigenvalue bound failed");
            }
            bound = std::max({bound, std::fabs(solver.eigenvalues().minCoeff()),
                              std::fabs(solver.eigenvalues().maxCoeff())});
        }
        return bound;
    }

  private:
    // (hre_, him_) = H * (tre_, tim_) with H = diag + f * tridiag(coupling)
    void apply_h(const Eigen::VectorXd& diag, double f, bool coupled) {
        hre_.array() = diag.array() * tre_.array();
        him_.array() = diag.array() * tim_.array();
        if (coupled) {
            for (int i = 0; i + 1 < dim_; ++i) {
                const double c = f * tri_.coupling(i);
                hre_(i) += c * tre_(i + 1);
                him_(i) += c * tim_(i + 1);
                hre_(i + 1) += c * tre_(i);
                him_(i + 1) += c * tim_(i);
            }
        }
    }

    ModelParams params_;
    TridiagonalModel tri_;
    int dim_;
    Eigen::VectorXd re_, im_, tre_, tim_, hre_, him_;
};

long step_count(double t_end, double dt) {
    return std::max<long>(1, std::lround(std::ceil(t_end / dt - 1e-9)));
}

std::atomic<long> g_evolve_calls{0};

} // namespace

namespace detail {
long evolve_invocation_count() { return g_evolve_calls.load(); }
} // namespace detail

Trajectory evolve(const ModelParams& p, const SpinSpace& space, const EvolutionConfig& cfg) {
    g_evolve_calls.fetch_add(1);
    p.validate();
    if (space.n_atoms != p.n_atoms) {
        throw std::invalid_argument("evolve: space does not match params");
    }
    if (cfg.t_end < 0.0 && cfg.t_end != -1.0) {
        throw std::invalid_argument("evolve: t_end must be >= 0 (or -1 for tau)");
    }
    if (cfg.store_every < 1) {
        throw std::invalid_argument("evolve: store_every must be >= 1");
    }
    const double t_end = cfg.t_end < 0.0 ? p.charge_window_end() : cfg.t_end;

    Stepper stepper(p, space);
    double dt = cfg.dt > 0.0 ? cfg.dt : p.t_period / 4096.0;
    const double bound = stepper.spectral_bound();
    while (dt * bound > 0.5) dt *= 0.5;

    if (t_end > 0.0 && cfg.auto_refine) {
        for (int r = 0;; ++r) {
            const long n = step_count(t_end, dt);
            stepper.reset();
            stepper.run(0.0, t_end / n, n);
            const StateVector coarse = stepper.state();
            stepper.reset();
            stepper.run(0.0, t_end / (2 * n), 2 * n);
            if ((coarse - stepper.state()).norm() <= 1e-8) break;
            if (r >= cfg.max_refinements) {
                throw std::runtime_error("evolve: step refinement did not converge");
            }
            dt *= 0.5;
        }
    }

    Trajectory traj;
    traj.params = p;
    traj.config = cfg;
    stepper.reset();
    traj.times.push_back(0.0);
    traj.states.push_back(stepper.state());
    if (t_end <= 0.0) {
        traj.dt_used = 0.0;
        return traj;
    }
    const long n = step_count(t_end, dt);
    const double dt_eff = t_end / n;
    traj.dt_used = dt_eff;
    for (long k = 1; k <= n; ++k) {
        stepper.step((k - 0.5) * dt_eff, dt_eff);
        if (k % cfg.store_every == 0 || k == n) {
            traj.times.push_back(k * dt_eff);
            traj.states.push_back(stepper.state());
            traj.max_norm_drift =
                std::max(traj.max_norm_drift, std::fabs(stepper.norm() - 1.0));
        }
    }
    if (traj.max_norm_drift >= 1e-9) {
        throw std::runtime_error("evolve: norm drift exceeded 1e-9");
    }
    return traj;
}

Operator density_matrix(const StateVector& state) {
    return state * state.adjoint();
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_trajectory_csv: cannot open " + path);
    out << "# qbatt-trajectory v1\n";
    out << "# basis: dicke-ascending-m (index k maps to m = k - N/2)\n";
    out << "# params: " << csv::params_json(traj.params) << "\n";
    out << "# dt: " << csv::number(traj.dt_used) << "\n";
    out << "t";
    const int dim = traj.states.empty() ? 0 : static_cast<int>(traj.states.front().size());
    for (int k = 0; k < dim; ++k) out << ",re_" << k << ",im_" << k;
    out << "\n";
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        out << csv::number(traj.times[i]);
        for (int k = 0; k < dim; ++k) {
            out << ',' << csv::number(traj.states[i](k).real())
                << ',' << csv::number(traj.states[i](k).imag());
        }
        out << "\n";
    }
}

} // namespace qbatt
