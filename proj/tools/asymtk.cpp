// asymtk: batch runner for the asymmetry toolkit. Loads a JSON config, lets
// command-line flags override individual keys, executes the scenario and
// writes the report (CSV or JSON) to stdout or a file.
//
// Exit codes: 0 pass, 1 config/IO error, 2 invariant failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "asym/errors.hpp"
#include "asym/runner.hpp"

namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw asym::ConfigError("cannot open config file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"asymtk - asymmetry freezing toolkit"};
    app.require_subcommand(1);

    CLI::App* run_cmd = app.add_subcommand("run", "run a scenario and emit a report");

    std::string config_path;
    std::string scenario;
    std::optional<std::uint64_t> seed;
    std::string format;
    std::string out_path;
    std::optional<double> freeze_tol;
    std::vector<double> p_grid;
    std::vector<double> amplitudes;
    std::optional<int> level_spacing;
    std::optional<int> num_extra;
    std::optional<int> t_max;
    std::optional<int> fock_dim;
    std::optional<int> trials;
    std::optional<int> dim;
    std::optional<int> group_order;
    std::vector<int> charges;

    run_cmd->add_option("--config", config_path, "JSON config file");
    run_cmd->add_option("--scenario", scenario, "example1, example2 or theorem");
    run_cmd->add_option("--seed", seed, "random seed (required for theorem runs)");
    run_cmd->add_option("--format", format, "report format: csv or json");
    run_cmd->add_option("--out", out_path, "output path (default: stdout)");
    run_cmd->add_option("--freeze-tol", freeze_tol, "freezing tolerance in bits");
    run_cmd->add_option("--p-grid", p_grid, "example1 noise parameters")->delimiter(',');
    run_cmd->add_option("--amplitudes", amplitudes,
                        "real state amplitudes (use the config file for complex ones)")
        ->delimiter(',');
    run_cmd->add_option("--N", level_spacing, "example2 level spacing");
    run_cmd->add_option("--M", num_extra, "example2 extra components");
    run_cmd->add_option("--t-max", t_max, "example2 number of measurements");
    run_cmd->add_option("--fock-dim", fock_dim, "example2 truncation dimension");
    run_cmd->add_option("--trials", trials, "theorem trial count");
    run_cmd->add_option("--dim", dim, "theorem Hilbert-space dimension");
    run_cmd->add_option("--group-order", group_order, "theorem cyclic group order");
    run_cmd->add_option("--charges", charges, "theorem charge per basis vector")->delimiter(',');

    CLI11_PARSE(app, argc, argv);

    try {
        // Merge: config file first, then every flag overrides its key.
        json doc = json::object();
        if (!config_path.empty()) {
            doc = json::parse(read_file(config_path), nullptr, true);
            if (!doc.is_object()) {
                throw asym::ConfigError("config file must contain a JSON object");
            }
        }
        if (!scenario.empty()) {
            doc["scenario"] = scenario;
        }
        if (seed) {
            doc["seed"] = *seed;
        }
        if (!format.empty()) {
            doc["format"] = format;
        }
        if (!out_path.empty()) {
            doc["out"] = out_path;
        }
        if (freeze_tol) {
            doc["freeze_tol"] = *freeze_tol;
        }
        if (!p_grid.empty()) {
            doc["p_grid"] = p_grid;
        }
        if (!amplitudes.empty()) {
            doc["amplitudes"] = amplitudes;
        }
        if (level_spacing) {
            doc["N"] = *level_spacing;
        }
        if (num_extra) {
            doc["M"] = *num_extra;
        }
        if (t_max) {
            doc["t_max"] = *t_max;
        }
        if (fock_dim) {
            doc["fock_dim"] = *fock_dim;
        }
        if (trials) {
            doc["trials"] = *trials;
        }
        if (dim) {
            doc["dim"] = *dim;
        }
        if (group_order) {
            doc["group_order"] = *group_order;
        }
        if (!charges.empty()) {
            doc["charges"] = charges;
        }

        const asym::cli::RunConfig config = asym::cli::parse_config(doc.dump());
        const asym::cli::RunResult result = asym::cli::run(config);
        asym::cli::emit_report(result.report, config.out_path);
        std::cerr << result.summary << "\n";
        if (result.exit_code != 0) {
            std::cerr << "invariant failure: see report\n";
        }
        return result.exit_code;
    } catch (const asym::ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 1;
    } catch (const asym::FileWriteError& err) {
        std::cerr << "io error: " << err.what() << "\n";
        return 1;
    } catch (const asym::Error& err) {
        std::cerr << "invariant failure: " << err.what() << "\n";
        return 2;
    }
}
