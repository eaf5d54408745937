// Command-line front end: solve single scenarios, run comparative-statics
// sweeps, reproduce the standard figure bundles, and evaluate spectrum
// purchases. Scenario keys can come from a config file, from flags named
// after the same keys, or both (flags win).

#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "smkt/config.hpp"
#include "smkt/errors.hpp"
#include "smkt/sweep.hpp"

namespace {

struct ScenarioArgs {
    std::string config_path;
    std::map<std::string, std::string> overrides;
};

void add_scenario_options(CLI::App* cmd, ScenarioArgs& args) {
    cmd->add_option("--config", args.config_path, "scenario config file (key = value lines)");
    for (const auto& key : smkt::config_keys()) {
        args.overrides[key]; // reserve a stable slot
        cmd->add_option("--" + key, args.overrides[key], "overrides config key '" + key + "'");
    }
}

smkt::ScenarioConfig load_scenario(const ScenarioArgs& args) {
    smkt::KeyValues pairs;
    if (!args.config_path.empty()) pairs = smkt::read_key_values_file(args.config_path);
    for (const auto& [key, value] : args.overrides)
        if (!value.empty()) pairs[key] = value;
    return smkt::config_from_pairs(pairs);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"congestible-spectrum market equilibria and comparative statics"};
    app.require_subcommand(1);

    ScenarioArgs solve_args;
    CLI::App* solve_cmd = app.add_subcommand("solve", "solve one scenario, JSON to stdout");
    add_scenario_options(solve_cmd, solve_args);

    ScenarioArgs sweep_args;
    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "run the configured sweep and write the table");
    add_scenario_options(sweep_cmd, sweep_args);

    int figure_id = 1;
    double fig_p_max = 1.0, fig_lo = 0.0, fig_hi = 2.0;
    long fig_steps = 201;
    std::string fig_output, fig_format = "csv";
    CLI::App* figures_cmd =
        app.add_subcommand("figures", "emit a standard comparison bundle");
    figures_cmd->add_option("id", figure_id, "figure id (1-5)")->required();
    figures_cmd->add_option("--p_max", fig_p_max, "demand price intercept");
    figures_cmd->add_option("--lo", fig_lo, "smallest extra bandwidth");
    figures_cmd->add_option("--hi", fig_hi, "largest extra bandwidth");
    figures_cmd->add_option("--steps", fig_steps, "grid points");
    figures_cmd->add_option("--output", fig_output, "output path (default figure<id>.<format>)");
    figures_cmd->add_option("--format", fig_format, "csv or json");

    ScenarioArgs invest_args;
    CLI::App* invest_cmd =
        app.add_subcommand("invest", "evaluate a spectrum purchase scenario, JSON to stdout");
    add_scenario_options(invest_cmd, invest_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve_cmd->parsed()) {
            std::cout << smkt::solve_to_json(load_scenario(solve_args)).dump(2) << "\n";
        } else if (sweep_cmd->parsed()) {
            const smkt::ScenarioConfig config = load_scenario(sweep_args);
            if (config.output.empty())
                throw smkt::DomainError("config field 'output': required for a sweep run");
            const smkt::SweepTable table = smkt::run_sweep(config);
            smkt::emit(table, config.format, config.output);
            std::cout << config.output << "\n";
        } else if (figures_cmd->parsed()) {
            if (fig_format != "csv" && fig_format != "json")
                throw smkt::DomainError("config field 'format': must be 'csv' or 'json'");
            const smkt::SweepTable table =
                smkt::figure_suite(figure_id, fig_p_max, fig_lo, fig_hi, fig_steps);
            std::string path = fig_output;
            if (path.empty())
                path = "figure" + std::to_string(figure_id) + "." + fig_format;
            smkt::emit(table, fig_format, path);
            std::cout << path << "\n";
        } else if (invest_cmd->parsed()) {
            std::cout << smkt::invest_to_json(load_scenario(invest_args)).dump(2) << "\n";
        }
    } catch (const smkt::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
