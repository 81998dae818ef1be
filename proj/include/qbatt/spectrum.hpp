#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qbatt/model.hpp"

namespace qbatt {

struct SpectrumPoint {
    double lambda = 0.0;
    double e_ground = 0.0;        // lowest eigenvalue / (N/2)
    double e_excited = 0.0;       // second eigenvalue / (N/2)
    double gap = 0.0;             // e_excited - e_ground (same normalization)
    double order_parameter = 0.0; // ground-state <Jz> / (N/2)
    std::optional<double> e_max_dynamic; // peak stored energy from the propagator
};

/// Diagonalizes H_s = delta Jz + (2 lambda delta / N) Jz^2 + g Jx and returns
/// the two lowest levels (normalized by N/2) plus the ground-state order
/// parameter. The transverse field g is an explicit knob; g = 0 keeps H_s
/// diagonal. Requires N >= 2.
SpectrumPoint static_spectrum(int n_atoms, double delta, double lambda, double transverse);

/// Per-lambda static spectra over a grid; when dynamic_drive is set, each
/// point also carries the numeric peak stored energy at that lambda for the
/// given (v0, T).
struct DynamicDrive {
    double v0 = 0.0;
    double t_period = 0.0;
};

std::vector<SpectrumPoint> lambda_sweep(int n_atoms, double delta,
                                        const std::vector<double>& lambdas,
                                        double transverse,
                                        const std::optional<DynamicDrive>& dynamic_drive,
                                        int workers = 1);

void write_spectrum_csv(const std::vector<SpectrumPoint>& points, const std::string& path,
                        const std::string& config_json);

} // namespace qbatt
