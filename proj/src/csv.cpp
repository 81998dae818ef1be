#include "qbatt/csv.hpp"

#include <charconv>
#include <system_error>

#include <json.hpp>

namespace qbatt::csv {

std::string number(double x) {
    if (x == 0.0) x = 0.0;  // normalize -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string number(int x) { return std::to_string(x); }
std::string number(long x) { return std::to_string(x); }

std::string params_json(const ModelParams& p) {
    nlohmann::json j;
    j["n_atoms"] = p.n_atoms;
    j["delta"] = p.delta;
    j["lambda"] = p.lambda;
    j["v0"] = p.v0;
    j["t_period"] = p.t_period;
    j["tau"] = p.charge_window_end();
    return j.dump();
}

} // namespace qbatt::csv
