#include "qbatt/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qbatt {

namespace {

using nlohmann::json;

void require_keys_known(const json& obj, const std::set<std::string>& known,
                        const std::string& where) {
    for (const auto& item : obj.items()) {
        if (!known.count(item.key())) {
            throw ConfigError("config: unknown field '" + item.key() + "' in " + where);
        }
    }
}

double get_num(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
    if (!obj.at(key).is_number()) {
        throw ConfigError(std::string("config: field '") + key + "' must be a number");
    }
    return obj.at(key).get<double>();
}

int get_int(const json& obj, const char* key, int fallback) {
    if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
    if (!obj.at(key).is_number_integer()) {
        throw ConfigError(std::string("config: field '") + key + "' must be an integer");
    }
    return obj.at(key).get<int>();
}

bool get_bool(const json& obj, const char* key, bool fallback) {
    if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
    if (!obj.at(key).is_boolean()) {
        throw ConfigError(std::string("config: field '") + key + "' must be a boolean");
    }
    return obj.at(key).get<bool>();
}

Grid1D get_grid(const json& obj, const char* key, const Grid1D& fallback) {
    if (!obj.contains(key) || obj.at(key).is_null()) return fallback;
    const json& g = obj.at(key);
    if (!g.is_object()) {
        throw ConfigError(std::string("config: field '") + key + "' must be an object");
    }
    require_keys_known(g, {"min", "max", "steps"}, key);
    Grid1D grid;
    grid.min = get_num(g, "min", 0.0);
    grid.max = get_num(g, "max", grid.min);
    grid.steps = get_int(g, "steps", 1);
    if (grid.steps < 1) {
        throw ConfigError(std::string("config: grid '") + key + "' needs steps >= 1");
    }
    return grid;
}

} // namespace

RunConfig parse_run_config(const std::string& json_text, const std::string& command) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: JSON parse error: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("config: top level must be an object");
    require_keys_known(doc,
                       {"command", "model", "evolution", "backend", "out", "workers",
                        "time_samples", "dump_states", "sweep2d", "spectrum", "scaling"},
                       "top level");

    RunConfig cfg;
    cfg.command = doc.value("command", command);
    if (!command.empty()) cfg.command = command;
    const std::set<std::string> commands{"evolve", "compare", "sweep2d", "spectrum", "scaling"};
    if (!commands.count(cfg.command)) {
        throw ConfigError("config: unknown command '" + cfg.command + "'");
    }

    if (doc.contains("model")) {
        const json& m = doc.at("model");
        require_keys_known(m, {"n_atoms", "delta", "lambda", "v0", "t_period", "tau"}, "model");
        cfg.model.n_atoms = get_int(m, "n_atoms", cfg.model.n_atoms);
        cfg.model.delta = get_num(m, "delta", cfg.model.delta);
        cfg.model.lambda = get_num(m, "lambda", cfg.model.lambda);
        cfg.model.v0 = get_num(m, "v0", cfg.model.v0);
        cfg.model.t_period = get_num(m, "t_period", cfg.model.t_period);
        cfg.model.tau = get_num(m, "tau", cfg.model.tau);
    }
    if (doc.contains("evolution")) {
        const json& e = doc.at("evolution");
        require_keys_known(e, {"dt", "t_end", "store_every", "auto_refine"}, "evolution");
        cfg.evolution.dt = get_num(e, "dt", cfg.evolution.dt);
        cfg.evolution.t_end = get_num(e, "t_end", cfg.evolution.t_end);
        cfg.evolution.store_every = get_int(e, "store_every", cfg.evolution.store_every);
        cfg.evolution.auto_refine = get_bool(e, "auto_refine", cfg.evolution.auto_refine);
    }
    if (doc.contains("backend")) {
        if (!doc.at("backend").is_string()) throw ConfigError("config: backend must be a string");
        cfg.backend = doc.at("backend").get<std::string>();
    }
    if (doc.contains("out")) {
        if (!doc.at("out").is_string()) throw ConfigError("config: out must be a string");
        cfg.out = doc.at("out").get<std::string>();
    }
    cfg.workers = get_int(doc, "workers", cfg.workers);
    cfg.time_samples = get_int(doc, "time_samples", cfg.time_samples);
    cfg.dump_states = get_bool(doc, "dump_states", cfg.dump_states);

    if (doc.contains("sweep2d")) {
        const json& s = doc.at("sweep2d");
        require_keys_known(s, {"v0", "t_period"}, "sweep2d");
        cfg.v0_grid = get_grid(s, "v0", cfg.v0_grid);
        cfg.t_grid = get_grid(s, "t_period", cfg.t_grid);
    }
    if (doc.contains("spectrum")) {
        const json& s = doc.at("spectrum");
        require_keys_known(s, {"lambda", "transverse", "join_dynamics"}, "spectrum");
        cfg.lambda_grid = get_grid(s, "lambda", cfg.lambda_grid);
        cfg.transverse = get_num(s, "transverse", cfg.transverse);
        cfg.join_dynamics = get_bool(s, "join_dynamics", cfg.join_dynamics);
    }
    if (doc.contains("scaling")) {
        const json& s = doc.at("scaling");
        require_keys_known(s, {"n_min", "n_max", "n_stride", "n_list", "lambda_list"}, "scaling");
        if (s.contains("n_list") && !s.at("n_list").is_null()) {
            cfg.n_list = s.at("n_list").get<std::vector<int>>();
        } else {
            const int n_min = get_int(s, "n_min", 1);
            const int n_max = get_int(s, "n_max", 100);
            const int n_stride = get_int(s, "n_stride", 1);
            if (n_min < 1 || n_max < n_min || n_stride < 1) {
                throw ConfigError("config: scaling needs 1 <= n_min <= n_max, n_stride >= 1");
            }
            for (int n = n_min; n <= n_max; n += n_stride) cfg.n_list.push_back(n);
        }
        if (s.contains("lambda_list") && !s.at("lambda_list").is_null()) {
            cfg.lambda_list = s.at("lambda_list").get<std::vector<double>>();
        }
    }
    return cfg;
}

RunConfig load_run_config(const std::string& path, const std::string& command) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_run_config(buf.str(), command);
}

std::string resolved_config_json(const RunConfig& cfg) {
    json doc;
    doc["command"] = cfg.command;
    doc["model"] = {{"n_atoms", cfg.model.n_atoms}, {"delta", cfg.model.delta},
                    {"lambda", cfg.model.lambda},   {"v0", cfg.model.v0},
                    {"t_period", cfg.model.t_period}, {"tau", cfg.model.charge_window_end()}};
    doc["evolution"] = {{"dt", cfg.evolution.dt},
                        {"t_end", cfg.evolution.t_end},
                        {"store_every", cfg.evolution.store_every},
                        {"auto_refine", cfg.evolution.auto_refine}};
    // workers is execution machinery, not provenance: identical configs must
    // produce identical bytes for any worker count
    doc["backend"] = cfg.backend;
    doc["out"] = cfg.out;
    if (cfg.command == "evolve" || cfg.command == "compare") {
        doc["time_samples"] = cfg.time_samples;
        doc["dump_states"] = cfg.dump_states;
    }
    if (cfg.command == "sweep2d") {
        doc["sweep2d"] = {{"v0", {{"min", cfg.v0_grid.min}, {"max", cfg.v0_grid.max}, {"steps", cfg.v0_grid.steps}}},
                          {"t_period", {{"min", cfg.t_grid.min}, {"max", cfg.t_grid.max}, {"steps", cfg.t_grid.steps}}}};
    }
    if (cfg.command == "spectrum") {
        doc["spectrum"] = {{"lambda", {{"min", cfg.lambda_grid.min}, {"max", cfg.lambda_grid.max}, {"steps", cfg.lambda_grid.steps}}},
                           {"transverse", cfg.transverse},
                           {"join_dynamics", cfg.join_dynamics}};
    }
    if (cfg.command == "scaling") {
        doc["scaling"] = {{"n_list", cfg.n_list}, {"lambda_list", cfg.lambda_list}};
    }
    return doc.dump();
}

} // namespace qbatt
