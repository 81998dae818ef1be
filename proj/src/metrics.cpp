#include "qbatt/metrics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "qbatt/csv.hpp"

namespace qbatt {

namespace {

double population_moment(const StateVector& state, const ModelParams& p, int power) {
    const SpinSpace space(p.n_atoms);
    double acc = 0.0;
    for (int k = 0; k < space.dim; ++k) {
        const double m = space.m_of(k);
        acc += std::norm(state(k)) * std::pow(m, power);
    }
    return acc;
}

double entropy_bits(double prob) {
    return prob > 0.0 ? -prob * std::log2(prob) : 0.0;
}

} // namespace

double stored_energy(const StateVector& state, const ModelParams& p) {
    return p.delta * population_moment(state, p, 1) - h0_expectation_floor(p);
}

std::vector<double> average_power(const std::vector<double>& times,
                                  const std::vector<double>& energy) {
    if (times.size() != energy.size()) {
        throw std::invalid_argument("average_power: length mismatch");
    }
    std::vector<double> power(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        power[i] = times[i] > 0.0 ? energy[i] / times[i] : 0.0;
    }
    return power;
}

double instantaneous_power(const StateVector& state, const ModelParams& p, double t) {
    // -i tr(H0 [H, rho]) = 2 Im < H0 psi, H psi >
    const TridiagonalModel tri = build_tridiagonal(p);
    const int dim = static_cast<int>(state.size());
    const double tau = p.charge_window_end();
    const bool in_window = t >= 0.0 && t <= tau;
    const double f = in_window ? drive_amplitude(p, t) : 0.0;

    StateVector h_psi(dim);
    for (int k = 0; k < dim; ++k) {
        const double diag = in_window ? tri.level(k) : tri.level_free(k);
        std::complex<double> acc = diag * state(k);
        if (in_window && f != 0.0) {
            if (k > 0) acc += f * tri.coupling(k - 1) * state(k - 1);
            if (k + 1 < dim) acc += f * tri.coupling(k) * state(k + 1);
        }
        h_psi(k) = acc;
    }
    std::complex<double> cross = 0.0;
    for (int k = 0; k < dim; ++k) {
        cross += std::conj(tri.level_free(k) * state(k)) * h_psi(k);
    }
    return 2.0 * cross.imag();
}

double fluctuation(const StateVector& state, const ModelParams& p) {
    // shifted two-pass form: the summands are nonnegative, so the large
    // <Jz>^2 cancellation never appears
    const SpinSpace space(p.n_atoms);
    const double m1 = population_moment(state, p, 1);
    double var = 0.0;
    for (int k = 0; k < space.dim; ++k) {
        const double d = space.m_of(k) - m1;
        var += std::norm(state(k)) * d * d;
    }
    var *= p.delta * p.delta;
    if (var <= -1e-12) {
        throw std::domain_error("fluctuation: negative variance beyond tolerance");
    }
    return var > 0.0 ? std::sqrt(var) : 0.0;
}

double diagonal_entropy(const StateVector& state) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < state.size(); ++k) {
        s += entropy_bits(std::norm(state(k)));
    }
    return s;
}

double von_neumann_entropy(const StateVector& state) {
    Eigen::SelfAdjointEigenSolver<Operator> es(state * state.adjoint());
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("von_neumann_entropy: eigendecomposition failed");
    }
    double s = 0.0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        s += entropy_bits(es.eigenvalues()(k));
    }
    return s;
}

MetricSeries metric_series(const Trajectory& traj, bool with_svn) {
    MetricSeries out;
    out.backend = "numeric";
    out.params = traj.params;
    out.times = traj.times;
    const std::size_t n = traj.times.size();
    out.energy.resize(n);
    out.inst_power.resize(n);
    out.fluctuation.resize(n);
    out.s_diag.resize(n);
    out.s_vn.resize(n);
    out.coherence.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const StateVector& psi = traj.states[i];
        out.energy[i] = stored_energy(psi, traj.params);
        out.inst_power[i] = instantaneous_power(psi, traj.params, traj.times[i]);
        out.fluctuation[i] = fluctuation(psi, traj.params);
        out.s_diag[i] = diagonal_entropy(psi);
        out.s_vn[i] = with_svn ? von_neumann_entropy(psi) : 0.0;
        out.coherence[i] = out.s_diag[i] - out.s_vn[i];
    }
    out.avg_power = average_power(out.times, out.energy);
    return out;
}

void write_metric_series_csv(const MetricSeries& series, const std::string& path,
                             const std::string& config_json) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_metric_series_csv: cannot open " + path);
    out << "# qbatt-metric-series v1\n";
    out << "# backend: " << series.backend << "\n";
    out << "# basis: dicke-ascending-m (index k maps to m = k - N/2)\n";
    out << "# units: hbar = omega0 = 1; E in hbar*omega0, P in hbar*omega0^2, entropies in bits\n";
    out << "# params: " << csv::params_json(series.params) << "\n";
    if (!config_json.empty()) out << "# config: " << config_json << "\n";
    out << "t,E,P,P_I,Sigma,S_diag,S_vN,C\n";
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        out << csv::number(series.times[i]) << ',' << csv::number(series.energy[i]) << ','
            << csv::number(series.avg_power[i]) << ',' << csv::number(series.inst_power[i])
            << ',' << csv::number(series.fluctuation[i]) << ',' << csv::number(series.s_diag[i])
            << ',' << csv::number(series.s_vn[i]) << ',' << csv::number(series.coherence[i])
            << "\n";
    }
}

} // namespace qbatt
