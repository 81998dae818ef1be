#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qbatt/analytic.hpp"
#include "qbatt/bessel.hpp"
#include "qbatt/commands.hpp"
#include "qbatt/metrics.hpp"
#include "qbatt/model.hpp"
#include "qbatt/propagator.hpp"
#include "qbatt/spectrum.hpp"
#include "qbatt/spin_space.hpp"
#include "qbatt/version.hpp"

namespace py = pybind11;
using namespace qbatt;

PYBIND11_MODULE(_qbatt, m) {
    m.doc() = "Driven collective-spin quantum battery simulator (C++ core)";
    m.attr("__version__") = kVersion;

    py::class_<SpinSpace>(m, "SpinSpace", "Symmetric N-spin (Dicke) space, dim = N + 1")
        .def(py::init<int>(), py::arg("n_atoms"))
        .def_readonly("n_atoms", &SpinSpace::n_atoms)
        .def_readonly("dim", &SpinSpace::dim)
        .def("spin", &SpinSpace::spin)
        .def("m_of", &SpinSpace::m_of, py::arg("k"));

    m.def("build_jx", &build_jx, py::arg("space"));
    m.def("build_jy", &build_jy, py::arg("space"));
    m.def("build_jz", &build_jz, py::arg("space"));
    m.def("build_jz2", &build_jz2, py::arg("space"));
    m.def("uncharged_state", &uncharged_state, py::arg("space"));

    py::class_<ModelParams>(m, "ModelParams",
                            "Physical parameters, units hbar = omega0 = 1")
        .def(py::init([](int n_atoms, double delta, double lam, double v0, double t_period,
                         double tau) {
                 ModelParams p;
                 p.n_atoms = n_atoms;
                 p.delta = delta;
                 p.lambda = lam;
                 p.v0 = v0;
                 p.t_period = t_period;
                 p.tau = tau;
                 p.validate();
                 return p;
             }),
             py::arg("n_atoms"), py::arg("delta") = 1.0, py::arg("lambda_") = 0.0,
             py::arg("v0") = 0.0, py::arg("t_period") = 1.0, py::arg("tau") = -1.0)
        .def_readwrite("n_atoms", &ModelParams::n_atoms)
        .def_readwrite("delta", &ModelParams::delta)
        .def_readwrite("lambda_", &ModelParams::lambda)
        .def_readwrite("v0", &ModelParams::v0)
        .def_readwrite("t_period", &ModelParams::t_period)
        .def_readwrite("tau", &ModelParams::tau)
        .def("charge_window_end", &ModelParams::charge_window_end)
        .def("validate", &ModelParams::validate);

    m.def("drive_amplitude", &drive_amplitude, py::arg("params"), py::arg("t"));
    m.def("h0_expectation_floor", &h0_expectation_floor, py::arg("params"));
    m.def(
        "hamiltonian_at",
        [](const ModelParams& p, const SpinSpace& space, double t) {
            return hamiltonian_at(p, space, t).h;
        },
        py::arg("params"), py::arg("space"), py::arg("t"));

    py::class_<EvolutionConfig>(m, "EvolutionConfig")
        .def(py::init<>())
        .def_readwrite("dt", &EvolutionConfig::dt)
        .def_readwrite("t_end", &EvolutionConfig::t_end)
        .def_readwrite("store_every", &EvolutionConfig::store_every)
        .def_readwrite("auto_refine", &EvolutionConfig::auto_refine);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("times", &Trajectory::times)
        .def_readonly("states", &Trajectory::states)
        .def_readonly("dt_used", &Trajectory::dt_used)
        .def_readonly("max_norm_drift", &Trajectory::max_norm_drift);

    m.def("expm_hermitian", &expm_hermitian, py::arg("h"), py::arg("dt"));
    m.def("evolve", &evolve, py::arg("params"), py::arg("space"),
          py::arg("config") = EvolutionConfig{},
          py::call_guard<py::gil_scoped_release>());
    m.def("density_matrix", &density_matrix, py::arg("state"));

    py::class_<MetricSeries>(m, "MetricSeries")
        .def_readonly("times", &MetricSeries::times)
        .def_readonly("energy", &MetricSeries::energy)
        .def_readonly("avg_power", &MetricSeries::avg_power)
        .def_readonly("inst_power", &MetricSeries::inst_power)
        .def_readonly("fluctuation", &MetricSeries::fluctuation)
        .def_readonly("s_diag", &MetricSeries::s_diag)
        .def_readonly("s_vn", &MetricSeries::s_vn)
        .def_readonly("coherence", &MetricSeries::coherence)
        .def_readonly("backend", &MetricSeries::backend);

    m.def("stored_energy", &stored_energy, py::arg("state"), py::arg("params"));
    m.def("instantaneous_power", &instantaneous_power, py::arg("state"), py::arg("params"),
          py::arg("t"));
    m.def("fluctuation", &fluctuation, py::arg("state"), py::arg("params"));
    m.def("diagonal_entropy", &diagonal_entropy, py::arg("state"));
    m.def("von_neumann_entropy", &von_neumann_entropy, py::arg("state"));
    m.def("metric_series", &metric_series, py::arg("trajectory"), py::arg("with_svn") = true,
          py::call_guard<py::gil_scoped_release>());
    m.def("analytic_metric_series", &analytic_metric_series, py::arg("params"),
          py::arg("times"), py::call_guard<py::gil_scoped_release>());

    m.def("bessel_j", &bessel_j, py::arg("order"), py::arg("x"));
    m.def("gauge_angle", &gauge_angle, py::arg("params"), py::arg("t"));

    py::class_<BesselCoeffs>(m, "BesselCoeffs")
        .def_readonly("b2", &BesselCoeffs::b2)
        .def_readonly("b3", &BesselCoeffs::b3)
        .def_readonly("b8", &BesselCoeffs::b8)
        .def_readonly("b9", &BesselCoeffs::b9)
        .def_readonly("b11", &BesselCoeffs::b11)
        .def_readonly("b12", &BesselCoeffs::b12);
    m.def("bessel_coefficients", &bessel_coefficients, py::arg("params"));

    m.def("analytic_stored_energy", &analytic_stored_energy, py::arg("params"), py::arg("t"));
    m.def("analytic_average_power", &analytic_average_power, py::arg("params"), py::arg("t"));
    m.def("analytic_instantaneous_power", &analytic_instantaneous_power, py::arg("params"),
          py::arg("t"));
    m.def("analytic_fluctuation", &analytic_fluctuation, py::arg("params"), py::arg("t"));
    m.def("analytic_diagonal_entropy", &analytic_diagonal_entropy, py::arg("params"),
          py::arg("t"));
    m.def("max_stored_energy", &max_stored_energy, py::arg("params"));
    m.def("time_of_max_energy", &time_of_max_energy, py::arg("params"));
    m.def("final_stored_energy", &final_stored_energy, py::arg("params"));
    m.def("final_fluctuation", &final_fluctuation, py::arg("params"));
    m.def("final_diagonal_entropy", &final_diagonal_entropy, py::arg("params"));

    py::class_<SpectrumPoint>(m, "SpectrumPoint")
        .def_readonly("lambda_", &SpectrumPoint::lambda)
        .def_readonly("e_ground", &SpectrumPoint::e_ground)
        .def_readonly("e_excited", &SpectrumPoint::e_excited)
        .def_readonly("gap", &SpectrumPoint::gap)
        .def_readonly("order_parameter", &SpectrumPoint::order_parameter)
        .def_readonly("e_max_dynamic", &SpectrumPoint::e_max_dynamic);

    m.def("static_spectrum", &static_spectrum, py::arg("n_atoms"), py::arg("delta"),
          py::arg("lambda_"), py::arg("transverse"));
    m.def(
        "lambda_sweep",
        [](int n_atoms, double delta, const std::vector<double>& lambdas, double transverse,
           double v0, double t_period, int workers) {
            std::optional<DynamicDrive> drive;
            if (v0 > 0.0 && t_period > 0.0) drive = DynamicDrive{v0, t_period};
            return lambda_sweep(n_atoms, delta, lambdas, transverse, drive, workers);
        },
        py::arg("n_atoms"), py::arg("delta"), py::arg("lambdas"), py::arg("transverse") = 0.0,
        py::arg("v0") = 0.0, py::arg("t_period") = 0.0, py::arg("workers") = 1,
        py::call_guard<py::gil_scoped_release>());
}
