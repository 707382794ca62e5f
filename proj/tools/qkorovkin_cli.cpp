#include "qkorovkin/harness/commands.hpp"
#include "qkorovkin/harness/config.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace qkorovkin::harness;

struct Overrides {
    std::string config;
    std::string out;
    std::optional<double> mass_tol;
    std::optional<std::size_t> p_max;
    std::optional<std::size_t> grid;
    std::optional<std::string> series;
};

void add_common(CLI::App* sub, Overrides& o) {
    sub->add_option("--config", o.config, "INI experiment config overlaid on the built-in preset");
    sub->add_option("--out", o.out, "write the CSV table here instead of stdout");
    sub->add_option("--mass-tol", o.mass_tol, "truncation mass tolerance");
    sub->add_option("--p-max", o.p_max, "maximum series degree");
    sub->add_option("--grid", o.grid, "uniform grid points on [0, 1]");
    sub->add_option("--series", o.series, "series form")->check(CLI::IsMember({"joint", "marginal"}));
}

int execute(Command command, const Overrides& o) {
    ExperimentConfig cfg = preset(command);
    try {
        if (!o.config.empty()) {
            load_config_file(cfg, o.config);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfigError;
    }
    // command-line values replace file values, so drop their file locations
    if (o.mass_tol) cfg.mass_tol = *o.mass_tol, cfg.origin.erase("truncation.mass_tol");
    if (o.p_max) cfg.p_max = *o.p_max, cfg.origin.erase("truncation.p_max");
    if (o.grid) cfg.grid_points = *o.grid, cfg.origin.erase("grid.points");
    if (o.series) cfg.form = *o.series == "marginal" ? qkorovkin::SeriesForm::marginal
                                                     : qkorovkin::SeriesForm::joint;
    if (!o.out.empty()) cfg.csv_path = o.out;

    const CommandResult result = run_command(cfg);
    if (cfg.csv_path.empty()) {
        std::cout << result.csv;
        std::cerr << result.report;
    } else {
        std::ofstream file(cfg.csv_path);
        if (!file) {
            std::cerr << "config error: cannot write " << cfg.csv_path << '\n';
            return kExitConfigError;
        }
        file << result.csv;
        std::cout << result.report;
    }
    return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"q-Lagrange Korovkin experiments"};
    app.require_subcommand(1);

    Overrides o;
    const std::pair<Command, const char*> commands[] = {
        {Command::verify_moments, "moments of K against their closed-form bounds"},
        {Command::converge, "sup-norm error against the modulus-of-continuity rate along an n-ladder"},
        {Command::counterexample, "auxiliary operator error sequence and its power series transform"},
        {Command::summability, "deferred weighted A-densities of the operator error sets"},
    };
    std::optional<Command> chosen;
    for (const auto& [command, help] : commands) {
        CLI::App* sub = app.add_subcommand(command_name(command), help);
        add_common(sub, o);
        sub->callback([&chosen, command = command] { chosen = command; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfigError;
    }
    return execute(*chosen, o);
}
