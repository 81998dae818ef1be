#include "qbatt/sweep.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "qbatt/analytic.hpp"
#include "qbatt/csv.hpp"
#include "qbatt/metrics.hpp"
#include "qbatt/propagator.hpp"

namespace qbatt {

namespace {
constexpr double kPi = std::numbers::pi;
}

void parallel_for(std::size_t count, int workers, const std::function<void(std::size_t)>& fn) {
    if (workers < 1) throw std::invalid_argument("parallel_for: workers must be >= 1");
    if (workers == 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto body = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int n_threads = static_cast<int>(std::min<std::size_t>(workers, count));
    pool.reserve(n_threads);
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(body);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

std::vector<double> Grid1D::values() const {
    if (steps < 1) throw std::invalid_argument("Grid1D: steps must be >= 1");
    std::vector<double> v(steps);
    if (steps == 1) {
        v[0] = min;
        return v;
    }
    for (int i = 0; i < steps; ++i) {
        v[i] = min + (max - min) * i / (steps - 1);
    }
    return v;
}

namespace {

// Peak scalars of a numeric run over the stored grid.
struct NumericPeaks {
    double e_max = 0.0;
    double t_max = 0.0;
    double p_max = 0.0;
    double sigma_max = 0.0;
    double s_max = 0.0;
    double e_tau = 0.0;
    double sigma_tau = 0.0;
    double s_tau = 0.0;
};

NumericPeaks numeric_peaks(const ModelParams& p, int store_every) {
    EvolutionConfig cfg;
    cfg.store_every = store_every;
    const Trajectory traj = evolve(p, SpinSpace(p.n_atoms), cfg);
    const MetricSeries series = metric_series(traj, /*with_svn=*/false);
    NumericPeaks peaks;
    for (std::size_t i = 0; i < series.times.size(); ++i) {
        if (series.energy[i] > peaks.e_max) {
            peaks.e_max = series.energy[i];
            peaks.t_max = series.times[i];
        }
        peaks.p_max = std::max(peaks.p_max, series.avg_power[i]);
        peaks.sigma_max = std::max(peaks.sigma_max, series.fluctuation[i]);
        peaks.s_max = std::max(peaks.s_max, series.s_diag[i]);
    }
    peaks.e_tau = series.energy.back();
    peaks.sigma_tau = series.fluctuation.back();
    peaks.s_tau = series.s_diag.back();
    return peaks;
}

// Distance of the cell's u = v0 T from the nearest target curve, against
// half the local cell extent in u.
bool cell_on_curve(double v0, double t_period, double dv0, double dt, double u_target) {
    const double u = v0 * t_period;
    const double half_extent = 0.5 * (std::fabs(dv0) * t_period + std::fabs(dt) * v0);
    return std::fabs(u - u_target) <= half_extent;
}

} // namespace

SweepResult run_sweep2d(const ModelParams& base, const Grid1D& v0_grid,
                        const Grid1D& t_grid, const std::string& backend, int workers,
                        int store_every) {
    if (backend != "numeric" && backend != "analytic") {
        throw std::invalid_argument("run_sweep2d: backend must be numeric or analytic");
    }
    if (backend == "analytic" && base.n_atoms < 2) {
        throw std::invalid_argument("run_sweep2d: analytic backend requires N >= 2");
    }
    SweepResult result;
    result.backend = backend;
    result.axis_v0 = v0_grid.values();
    result.axis_t_period = t_grid.values();
    const std::size_t nv = result.axis_v0.size();
    const std::size_t nt = result.axis_t_period.size();
    result.cells.resize(nv * nt);

    const double dv0 = nv > 1 ? (v0_grid.max - v0_grid.min) / (v0_grid.steps - 1) : 0.0;
    const double dt = nt > 1 ? (t_grid.max - t_grid.min) / (t_grid.steps - 1) : 0.0;

    parallel_for(result.cells.size(), workers, [&](std::size_t idx) {
        const std::size_t iv = idx / nt;
        const std::size_t it = idx % nt;
        ModelParams p = base;
        p.v0 = result.axis_v0[iv];
        p.t_period = result.axis_t_period[it];
        p.tau = -1.0;
        SweepCell& cell = result.cells[idx];
        cell.v0 = p.v0;
        cell.t_period = p.t_period;
        cell.n_atoms = p.n_atoms;
        cell.lambda = p.lambda;
        if (backend == "analytic") {
            cell.e_max = max_stored_energy(p);
            cell.t_max = time_of_max_energy(p);
            cell.e_tau = final_stored_energy(p);
            cell.sigma_tau = final_fluctuation(p);
            cell.s_tau = final_diagonal_entropy(p);
        } else {
            const NumericPeaks peaks = numeric_peaks(p, store_every);
            cell.e_max = peaks.e_max;
            cell.t_max = peaks.t_max;
            cell.e_tau = peaks.e_tau;
            cell.sigma_tau = peaks.sigma_tau;
            cell.s_tau = peaks.s_tau;
        }
        const double u = p.v0 * p.t_period;
        cell.on_critical_curve = cell_on_curve(p.v0, p.t_period, dv0, dt, 2.0 * kPi);
        // nearest curve u = (4n+2) pi, n >= 0
        const long n_near = std::max(0L, std::lround((u / (2.0 * kPi) - 1.0) / 2.0));
        cell.on_optimal_curve =
            cell_on_curve(p.v0, p.t_period, dv0, dt, (4.0 * n_near + 2.0) * kPi);
    });
    return result;
}

SweepResult run_scaling(const ModelParams& base, const std::vector<int>& n_list,
                        const std::vector<double>& lambda_list, int workers,
                        int store_every) {
    if (n_list.empty() || lambda_list.empty()) {
        throw std::invalid_argument("run_scaling: empty grid");
    }
    SweepResult result;
    result.backend = "numeric";
    result.axis_n = n_list;
    result.axis_lambda = lambda_list;
    result.cells.resize(n_list.size() * lambda_list.size());

    parallel_for(result.cells.size(), workers, [&](std::size_t idx) {
        const std::size_t il = idx / n_list.size();
        const std::size_t in = idx % n_list.size();
        ModelParams p = base;
        p.lambda = lambda_list[il];
        p.n_atoms = n_list[in];
        p.tau = -1.0;
        SweepCell& cell = result.cells[idx];
        cell.v0 = p.v0;
        cell.t_period = p.t_period;
        cell.n_atoms = p.n_atoms;
        cell.lambda = p.lambda;
        const NumericPeaks peaks = numeric_peaks(p, store_every);
        cell.e_max = peaks.e_max;
        cell.t_max = peaks.t_max;
        cell.p_max = peaks.p_max;
        cell.sigma_max = peaks.sigma_max;
        cell.s_max = peaks.s_max;
        cell.e_tau = peaks.e_tau;
        cell.sigma_tau = peaks.sigma_tau;
        cell.s_tau = peaks.s_tau;
    });
    return result;
}

void write_sweep2d_csv(const SweepResult& result, const std::string& path,
                       const std::string& config_json) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_sweep2d_csv: cannot open " + path);
    out << "# qbatt-sweep2d v1\n";
    out << "# backend: " << result.backend << "\n";
    out << "# units: hbar = omega0 = 1; E in hbar*omega0, entropies in bits\n";
    out << "# cell-order: v0 major, t_period minor\n";
    if (!config_json.empty()) out << "# config: " << config_json << "\n";
    out << "v0,t_period,v0T,E_max,E_tau,Sigma_tau,S_tau,t_max,on_critical_curve,on_optimal_curve\n";
    for (const auto& c : result.cells) {
        out << csv::number(c.v0) << ',' << csv::number(c.t_period) << ','
            << csv::number(c.v0 * c.t_period) << ',' << csv::number(c.e_max) << ','
            << csv::number(c.e_tau) << ',' << csv::number(c.sigma_tau) << ','
            << csv::number(c.s_tau) << ',' << csv::number(c.t_max) << ','
            << (c.on_critical_curve ? '1' : '0') << ',' << (c.on_optimal_curve ? '1' : '0')
            << "\n";
    }
}

void write_scaling_csv(const SweepResult& result, const std::string& path,
                       const std::string& config_json) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_scaling_csv: cannot open " + path);
    out << "# qbatt-scaling v1\n";
    out << "# backend: " << result.backend << "\n";
    out << "# units: hbar = omega0 = 1; E in hbar*omega0, P in hbar*omega0^2, entropies in bits\n";
    out << "# cell-order: lambda major, n_atoms minor\n";
    if (!config_json.empty()) out << "# config: " << config_json << "\n";
    out << "n_atoms,lambda,E_max,P_max,Sigma_max,S_max\n";
    for (const auto& c : result.cells) {
        out << csv::number(c.n_atoms) << ',' << csv::number(c.lambda) << ','
            << csv::number(c.e_max) << ',' << csv::number(c.p_max) << ','
            << csv::number(c.sigma_max) << ',' << csv::number(c.s_max) << "\n";
    }
}

} // namespace qbatt
