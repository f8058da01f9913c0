// cavent command line: single evaluations, parameter sweeps, and the
// validation suite for the dissipative atom-cavity entanglement models.
//
// Exit codes: 0 ok, 1 usage/config error, 2 numeric failure, 3 validation
// failure.

#include "cavent/acceptance.hpp"
#include "cavent/sweep.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace {

using cavent::sweep::ConfigError;
using cavent::sweep::RunConfig;

struct CliOptions {
    std::string config_path;
    std::string out_path;
    std::string format;
    std::string preset;
    int fock_dim = -1;
    bool both_routes = false;
    std::vector<std::string> sweeps;
    std::map<std::string, std::string> params;  // flag -> value text (angles allowed)
};

void add_common(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("--config", opts.config_path, "JSON config file; flags override its values");
    cmd->add_option("--out", opts.out_path, "output file (stdout when omitted)");
    cmd->add_option("--format", opts.format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--fock-dim", opts.fock_dim, "Fock truncation override");
    cmd->add_flag("--both-routes", opts.both_routes,
                  "emit both concurrence routes where applicable");
    cmd->add_option("--sweep", opts.sweeps,
                    "sweep axis 'param=v1,v2,...' (repeatable; first axis outermost)");
}

void add_param(CLI::App* cmd, CliOptions& opts, const std::string& flag,
               const std::string& key, const std::string& help) {
    cmd->add_option_function<std::string>(
        flag, [&opts, key](const std::string& v) { opts.params[key] = v; }, help);
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(text.substr(start));
            return out;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

RunConfig build_config(const std::string& scenario, const CliOptions& opts) {
    RunConfig config;
    if (!opts.config_path.empty()) {
        config = cavent::sweep::load_config(opts.config_path);
        if (config.scenario != scenario) {
            throw ConfigError("config file is for scenario '" + config.scenario +
                              "', subcommand is '" + scenario + "'");
        }
    }
    config.scenario = scenario;
    for (const auto& [key, text] : opts.params) {
        config.params[key] = cavent::sweep::parse_angle(text);
    }
    if (opts.fock_dim > 0) config.params["fock_dim"] = opts.fock_dim;
    if (!opts.out_path.empty()) config.out_path = opts.out_path;
    if (!opts.format.empty()) {
        config.format = opts.format == "json" ? cavent::sweep::Format::json
                                              : cavent::sweep::Format::csv;
    }
    if (opts.both_routes) config.emit_both_routes = true;
    if (!opts.preset.empty()) config.preset = opts.preset;
    for (const auto& text : opts.sweeps) {
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("sweep axis must look like 'param=v1,v2,...': " + text);
        }
        cavent::sweep::SweepAxis axis;
        axis.parameter = text.substr(0, eq);
        for (const auto& v : split(text.substr(eq + 1), ',')) {
            axis.values.push_back(cavent::sweep::parse_angle(v));
        }
        config.axes.push_back(std::move(axis));
    }
    return config;
}

int run_scenario(const std::string& scenario, const CliOptions& opts) {
    const RunConfig config = build_config(scenario, opts);
    cavent::sweep::check_output_path(config);
    const auto table = cavent::sweep::run(config);
    return cavent::sweep::write_output(table, config);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dissipative atom-cavity entanglement models"};
    app.require_subcommand(1);

    CliOptions opts_a, opts_b, opts_m;

    CLI::App* cmd_a = app.add_subcommand("scenario-a", "atom crossing one of two entangled leaky cavities");
    add_common(cmd_a, opts_a);
    add_param(cmd_a, opts_a, "--gt", "gt", "Rabi angle (radians or 'pi' syntax, e.g. 3pi/4)");
    add_param(cmd_a, opts_a, "--kappa1", "kappa1_over_g", "decay rate of C1 in units of g");
    add_param(cmd_a, opts_a, "--kappa2", "kappa2_over_g", "decay rate of C2 in units of g");
    add_param(cmd_a, opts_a, "--bell-phase", "bell_phase", "relative phase of the initial pair");

    CLI::App* cmd_b = app.add_subcommand("scenario-b", "two atoms crossing one leaky cavity in sequence");
    add_common(cmd_b, opts_b);
    add_param(cmd_b, opts_b, "--gt", "gt", "Rabi angle per transit");
    add_param(cmd_b, opts_b, "--kappa", "kappa_over_g", "cavity decay rate in units of g");
    add_param(cmd_b, opts_b, "--gap", "gap_gt", "idle Rabi angle between the transits");

    CLI::App* cmd_m = app.add_subcommand("micromaser", "one-atom micromaser steady state and probe pair");
    add_common(cmd_m, opts_m);
    cmd_m->add_option("--preset", opts_m.preset, "table1 | fig1")
        ->check(CLI::IsMember({"table1", "fig1"}));
    add_param(cmd_m, opts_m, "--gt", "gt", "Rabi angle per transit");
    add_param(cmd_m, opts_m, "--kappa", "kappa_over_g", "cavity decay rate in units of g");
    add_param(cmd_m, opts_m, "--pump-N", "pump_N", "pump parameter N = R/(2 kappa)");
    add_param(cmd_m, opts_m, "--n-th", "n_th", "thermal photon number");
    add_param(cmd_m, opts_m, "--gamma", "gamma_over_g", "atomic decay rate in units of g");

    CLI::App* cmd_v = app.add_subcommand("validate", "run the full validation suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (cmd_v->parsed()) {
            const auto results = cavent::acceptance::run_all();
            std::cout << cavent::acceptance::format_report(results);
            return cavent::acceptance::all_passed(results) ? 0 : 3;
        }
        if (cmd_a->parsed()) return run_scenario("scenario-a", opts_a);
        if (cmd_b->parsed()) return run_scenario("scenario-b", opts_b);
        if (cmd_m->parsed()) return run_scenario("micromaser", opts_m);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
