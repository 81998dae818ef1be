#include "qbatt/spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <fstream>
#include <stdexcept>

#include "qbatt/csv.hpp"
#include "qbatt/metrics.hpp"
#include "qbatt/propagator.hpp"
#include "qbatt/sweep.hpp"

namespace qbatt {

SpectrumPoint static_spectrum(int n_atoms, double delta, double lambda, double transverse) {
    if (n_atoms < 2) throw std::invalid_argument("static_spectrum: requires N >= 2");
    if (!(delta > 0.0)) throw std::invalid_argument("static_spectrum: delta must be > 0");

    ModelParams p;
    p.n_atoms = n_atoms;
    p.delta = delta;
    p.lambda = lambda;
    p.t_period = 1.0;  // unused by the static problem
    const TridiagonalModel tri = build_tridiagonal(p);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(tri.level, transverse * tri.coupling,
                                  Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("static_spectrum: eigendecomposition failed");
    }

    const double half_n = 0.5 * n_atoms;
    SpectrumPoint pt;
    pt.lambda = lambda;
    pt.e_ground = solver.eigenvalues()(0) / half_n;
    pt.e_excited = solver.eigenvalues()(1) / half_n;
    pt.gap = pt.e_excited - pt.e_ground;

    const SpinSpace space(n_atoms);
    const Eigen::VectorXd ground = solver.eigenvectors().col(0);
    double jz = 0.0;
    for (int k = 0; k < space.dim; ++k) {
        jz += ground(k) * ground(k) * space.m_of(k);
    }
    pt.order_parameter = jz / half_n;
    return pt;
}

std::vector<SpectrumPoint> lambda_sweep(int n_atoms, double delta,
                                        const std::vector<double>& lambdas,
                                        double transverse,
                                        const std::optional<DynamicDrive>& dynamic_drive,
                                        int workers) {
    std::vector<SpectrumPoint> points(lambdas.size());
    parallel_for(lambdas.size(), workers, [&](std::size_t i) {
        SpectrumPoint pt = static_spectrum(n_atoms, delta, lambdas[i], transverse);
        if (dynamic_drive) {
            ModelParams p;
            p.n_atoms = n_atoms;
            p.delta = delta;
            p.lambda = lambdas[i];
            p.v0 = dynamic_drive->v0;
            p.t_period = dynamic_drive->t_period;
            EvolutionConfig cfg;
            cfg.store_every = 4;
            const Trajectory traj = evolve(p, SpinSpace(n_atoms), cfg);
            double e_max = 0.0;
            for (const auto& state : traj.states) {
                e_max = std::max(e_max, stored_energy(state, p));
            }
            pt.e_max_dynamic = e_max;
        }
        points[i] = pt;
    });
    return points;
}

void write_spectrum_csv(const std::vector<SpectrumPoint>& points, const std::string& path,
                        const std::string& config_json) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_spectrum_csv: cannot open " + path);
    const bool with_dynamic = !points.empty() && points.front().e_max_dynamic.has_value();
    out << "# qbatt-spectrum v1\n";
    out << "# units: energies normalized by N/2; e_max_dynamic in hbar*omega0\n";
    if (!config_json.empty()) out << "# config: " << config_json << "\n";
    out << "lambda,e_ground,e_excited,gap,order_parameter";
    if (with_dynamic) out << ",e_max_dynamic";
    out << "\n";
    for (const auto& pt : points) {
        out << csv::number(pt.lambda) << ',' << csv::number(pt.e_ground) << ','
            << csv::number(pt.e_excited) << ',' << csv::number(pt.gap) << ','
            << csv::number(pt.order_parameter);
        if (with_dynamic) out << ',' << csv::number(pt.e_max_dynamic.value_or(0.0));
        out << "\n";
    }
}

} // namespace qbatt
