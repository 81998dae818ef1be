#pragma once

#include <string>

#include "qbatt/model.hpp"

namespace qbatt::csv {

/// Shortest round-trip decimal form of x, locale independent and identical
/// across runs and worker counts (std::to_chars). Negative zero prints as 0.
std::string number(double x);

std::string number(int x);
std::string number(long x);

/// Canonical one-line JSON for the model parameters (sorted keys).
std::string params_json(const ModelParams& p);

} // namespace qbatt::csv
