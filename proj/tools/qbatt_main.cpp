// qbatt - driven collective-spin battery simulator.
//
// Subcommands: evolve | compare | sweep2d | spectrum | scaling.
// Each run is described by a JSON config document; a handful of flags
// override config fields (flag > config > default). Exit codes: 0 success,
// 2 configuration error, 3 numerical failure.

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qbatt/commands.hpp"
#include "qbatt/csv.hpp"
#include "qbatt/version.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::optional<std::string> backend;
    std::optional<std::string> out;
    std::optional<int> workers;
    std::optional<int> n_atoms;
    std::optional<double> v0;
    std::optional<double> t_period;
    std::optional<double> lambda;
    bool seedless = false;  // assertion flag: there is no RNG to seed
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON run configuration")->required();
    cmd->add_option("--backend", flags.backend, "numeric | analytic | both");
    cmd->add_option("--out", flags.out, "output path prefix");
    cmd->add_option("--workers", flags.workers, "worker thread count");
    cmd->add_option("--n", flags.n_atoms, "override model.n_atoms");
    cmd->add_option("--v0", flags.v0, "override model.v0");
    cmd->add_option("--T", flags.t_period, "override model.t_period");
    cmd->add_option("--lambda", flags.lambda, "override model.lambda");
    cmd->add_flag("--seedless", flags.seedless,
                  "assert that the run uses no random numbers (always true)");
}

int run(const std::string& command, const CommonFlags& flags) {
    qbatt::RunConfig cfg;
    try {
        cfg = qbatt::load_run_config(flags.config_path, command);
        if (flags.backend) cfg.backend = *flags.backend;
        if (flags.out) cfg.out = *flags.out;
        if (flags.workers) cfg.workers = *flags.workers;
        if (flags.n_atoms) cfg.model.n_atoms = *flags.n_atoms;
        if (flags.v0) cfg.model.v0 = *flags.v0;
        if (flags.t_period) cfg.model.t_period = *flags.t_period;
        if (flags.lambda) cfg.model.lambda = *flags.lambda;
        if (cfg.workers < 1) throw qbatt::ConfigError("workers must be >= 1");
        // the sweep commands draw v0 / t_period / n from their grids, so the
        // model block is validated where it is actually consumed
        if (cfg.command == "evolve" || cfg.command == "compare") cfg.model.validate();
    } catch (const std::invalid_argument& e) {
        std::cerr << "qbatt: config error: " << e.what() << "\n";
        return 2;
    } catch (const qbatt::ConfigError& e) {
        std::cerr << "qbatt: config error: " << e.what() << "\n";
        return 2;
    }

    try {
        const auto written = qbatt::run_command(cfg);
        for (const auto& path : written) {
            std::cout << path << "\n";
        }
        return 0;
    } catch (const qbatt::ConfigError& e) {
        std::cerr << "qbatt: config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "qbatt: config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "qbatt: numerical failure: " << e.what() << "\n"
                  << "  params: " << qbatt::csv::params_json(cfg.model) << "\n";
        return 3;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"driven collective-spin quantum battery simulator"};
    app.set_version_flag("--version", std::string(qbatt::kVersion));
    app.require_subcommand(1);

    const char* names[] = {"evolve", "compare", "sweep2d", "spectrum", "scaling"};
    const char* descs[] = {
        "time series of battery observables for one parameter set",
        "evolve with both backends plus a deviation summary",
        "scan the (v0, T) plane for peak and final observables",
        "static spectrum and order parameter over an interaction grid",
        "peak observables versus atom number for several interactions"};
    CommonFlags flags[5];
    for (int i = 0; i < 5; ++i) {
        add_common(app.add_subcommand(names[i], descs[i]), flags[i]);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
        app.exit(e);
        return 2;
    }

    for (int i = 0; i < 5; ++i) {
        if (app.get_subcommand(names[i])->parsed()) {
            return run(names[i], flags[i]);
        }
    }
    std::cerr << "qbatt: no subcommand\n";
    return 2;
}
