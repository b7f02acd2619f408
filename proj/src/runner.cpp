#include "asym/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "asym/measures.hpp"
#include "asym/universality.hpp"

namespace asym::cli {

using json = nlohmann::ordered_json;

std::string format_significant(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

namespace {

// Per-row bounds asserted by the scenario runs; the freeze tolerance for A_r
// comes from the config.
constexpr double kSkewFreezeBound = 1e-8;
constexpr double kRecoveryBound = 1e-8;
constexpr double kTraceFloor = 1e-9;

Scenario parse_scenario(const json& doc) {
    if (!doc.contains("scenario")) {
        throw ConfigError("config: missing required key 'scenario'");
    }
    const auto& value = doc.at("scenario");
    if (!value.is_string()) {
        throw ConfigError("config: 'scenario' must be a string");
    }
    const std::string name = value.get<std::string>();
    if (name == "example1") {
        return Scenario::example1;
    }
    if (name == "example2") {
        return Scenario::example2;
    }
    if (name == "theorem") {
        return Scenario::theorem;
    }
    throw ConfigError("config: unknown scenario '" + name +
                      "' (expected example1, example2 or theorem)");
}

void reject_unknown_keys(const json& doc, Scenario scenario) {
    static const std::set<std::string> common = {"scenario", "seed", "format", "out",
                                                 "freeze_tol"};
    static const std::set<std::string> example1_keys = {"p_grid", "amplitudes"};
    static const std::set<std::string> example2_keys = {"N", "M", "t_max", "fock_dim",
                                                        "amplitudes"};
    static const std::set<std::string> theorem_keys = {"trials", "dim", "group_order",
                                                       "charges"};
    const std::set<std::string>* extra = &example1_keys;
    if (scenario == Scenario::example2) {
        extra = &example2_keys;
    } else if (scenario == Scenario::theorem) {
        extra = &theorem_keys;
    }
    for (const auto& [key, value] : doc.items()) {
        if (!common.contains(key) && !extra->contains(key)) {
            throw ConfigError("config: unknown key '" + key + "' for this scenario");
        }
    }
}

int parse_int(const json& doc, const std::string& key, int fallback, int minimum) {
    if (!doc.contains(key)) {
        return fallback;
    }
    const auto& value = doc.at(key);
    if (!value.is_number_integer()) {
        throw ConfigError("config: '" + key + "' must be an integer");
    }
    const int out = value.get<int>();
    if (out < minimum) {
        throw ConfigError("config: '" + key + "' must be >= " + std::to_string(minimum));
    }
    return out;
}

double parse_double(const json& doc, const std::string& key, double fallback) {
    if (!doc.contains(key)) {
        return fallback;
    }
    const auto& value = doc.at(key);
    if (!value.is_number()) {
        throw ConfigError("config: '" + key + "' must be a number");
    }
    return value.get<double>();
}

std::vector<Complex> parse_amplitudes(const json& doc) {
    std::vector<Complex> amplitudes;
    const auto& value = doc.at("amplitudes");
    if (!value.is_array() || value.empty()) {
        throw ConfigError("config: 'amplitudes' must be a nonempty array");
    }
    for (const auto& entry : value) {
        if (entry.is_number()) {
            amplitudes.emplace_back(entry.get<double>(), 0.0);
        } else if (entry.is_array() && entry.size() == 2 && entry[0].is_number() &&
                   entry[1].is_number()) {
            amplitudes.emplace_back(entry[0].get<double>(), entry[1].get<double>());
        } else {
            throw ConfigError("config: each amplitude must be a number or an [re, im] pair");
        }
    }
    double norm = 0.0;
    for (const Complex& a : amplitudes) {
        norm += std::norm(a);
    }
    if (std::abs(norm - 1.0) > tol::kNorm) {
        throw ConfigError("config: 'amplitudes' must satisfy sum |lambda|^2 = 1 within 1e-10");
    }
    return amplitudes;
}

std::vector<Complex> equal_amplitudes(int count) {
    std::vector<Complex> amplitudes(static_cast<std::size_t>(count));
    const double value = 1.0 / std::sqrt(static_cast<double>(count));
    for (Complex& a : amplitudes) {
        a = Complex(value, 0.0);
    }
    return amplitudes;
}

std::vector<double> default_p_grid() {
    std::vector<double> grid(11);
    for (int i = 0; i <= 10; ++i) {
        grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / 10.0;
    }
    return grid;
}

std::string render_csv(const std::vector<std::string>& header_lines,
                       const std::vector<std::string>& columns,
                       const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    for (const std::string& line : header_lines) {
        out << "# " << line << "\n";
    }
    for (std::size_t c = 0; c < columns.size(); ++c) {
        out << columns[c] << (c + 1 < columns.size() ? "," : "");
    }
    out << "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << row[c] << (c + 1 < row.size() ? "," : "");
        }
        out << "\n";
    }
    return out.str();
}

json meta_common(const RunConfig& config, const char* scenario_name) {
    json meta;
    meta["scenario"] = scenario_name;
    meta["seed"] = config.seed;
    meta["freeze_tol"] = config.freeze_tol;
    return meta;
}

std::string amplitudes_echo(const std::vector<Complex>& amplitudes) {
    std::ostringstream out;
    for (std::size_t i = 0; i < amplitudes.size(); ++i) {
        out << (i == 0 ? "" : ";") << format_significant(amplitudes[i].real()) << "+"
            << format_significant(amplitudes[i].imag()) << "i";
    }
    return out.str();
}

json amplitudes_json(const std::vector<Complex>& amplitudes) {
    json list = json::array();
    for (const Complex& a : amplitudes) {
        list.push_back({a.real(), a.imag()});
    }
    return list;
}

RunResult run_example1(const RunConfig& config) {
    const SymmetryRep rep = two_qubit_u1();
    const DensityMatrix rho_0 = example1_state(config.amplitudes[0], config.amplitudes[1]);
    const std::vector<Measure> measures = measure_registry(rep);

    // Step 0 carries the initial state; grid rows follow.
    std::vector<DensityMatrix> trajectory;
    std::vector<KrausChannel> channels;
    trajectory.push_back(rho_0);
    channels.push_back(KrausChannel::cptp({Matrix::Identity(4, 4)}));
    for (double p : config.p_grid) {
        const KrausChannel channel = example1_channel(p);
        trajectory.push_back(apply_channel(channel, rho_0));
        channels.push_back(channel);
    }

    const FreezeReport freeze =
        freezing_report(rep, trajectory, measures, config.freeze_tol, &channels);

    const double ar_0 = freeze.steps[0].values[0].value;
    const double skew_0 = freeze.steps[0].values[1].value;

    std::vector<std::vector<std::string>> rows;
    bool all_frozen = true;
    for (std::size_t i = 1; i < freeze.steps.size(); ++i) {
        const FreezeStep& step = freeze.steps[i];
        const double ar = step.values[0].value;
        const double skew = step.values[1].value;
        const double residual = step.recovery_residual.value();
        const bool frozen = std::abs(ar - ar_0) <= config.freeze_tol &&
                            std::abs(skew - skew_0) <= kSkewFreezeBound &&
                            residual <= kRecoveryBound;
        all_frozen = all_frozen && frozen;
        rows.push_back({format_significant(config.p_grid[i - 1]), format_significant(ar),
                        format_significant(skew), format_significant(residual),
                        frozen ? "true" : "false"});
    }

    RunResult result;
    result.exit_code = all_frozen ? 0 : 2;
    std::ostringstream summary;
    summary << "example1: " << rows.size() << " rows, ar_bits[0]=" << format_significant(ar_0)
            << ", all_frozen=" << (all_frozen ? "true" : "false");
    result.summary = summary.str();

    if (config.format == ReportFormat::csv) {
        result.report = render_csv(
            {
                "scenario=example1",
                "seed=" + std::to_string(config.seed),
                "freeze_tol=" + format_significant(config.freeze_tol),
                "amplitudes=" + amplitudes_echo(config.amplitudes),
            },
            {"p", "ar_bits", "skew", "recovery_residual", "frozen"}, rows);
    } else {
        json doc;
        doc["meta"] = meta_common(config, "example1");
        doc["meta"]["amplitudes"] = amplitudes_json(config.amplitudes);
        json out_rows = json::array();
        for (std::size_t i = 1; i < freeze.steps.size(); ++i) {
            const FreezeStep& step = freeze.steps[i];
            json row;
            row["p"] = config.p_grid[i - 1];
            row["ar_bits"] = step.values[0].value;
            row["skew"] = step.values[1].value;
            row["recovery_residual"] = step.recovery_residual.value();
            row["frozen"] = rows[i - 1].back() == "true";
            out_rows.push_back(std::move(row));
        }
        doc["rows"] = std::move(out_rows);
        result.report = doc.dump(2) + "\n";
    }
    return result;
}

RunResult run_example2(const RunConfig& config) {
    const Example2Config scenario = Example2Config::make(
        config.level_spacing, config.amplitudes, config.t_max, config.fock_dim);
    const SymmetryRep rep = fock_u1(scenario.fock_dim);
    const std::vector<DensityMatrix> trajectory = example2_trajectory(scenario);
    const std::vector<Measure> measures = measure_registry(rep);
    const FreezeReport freeze = freezing_report(rep, trajectory, measures, config.freeze_tol);

    const double ar_0 = freeze.steps[0].values[0].value;
    std::vector<std::vector<std::string>> rows;
    bool asserted_frozen = true;
    for (std::size_t t = 0; t < freeze.steps.size(); ++t) {
        const double ar = freeze.steps[t].values[0].value;
        const double trace = trajectory[t].trace_real();
        const bool frozen = std::abs(ar - ar_0) <= config.freeze_tol;
        // The freezing claim covers fewer measurements than the level spacing;
        // later rows are recorded but not asserted.
        if (t < static_cast<std::size_t>(scenario.level_spacing)) {
            asserted_frozen = asserted_frozen && frozen && (trace >= 1.0 - kTraceFloor);
        }
        rows.push_back({std::to_string(t), format_significant(ar), format_significant(trace),
                        frozen ? "true" : "false"});
    }

    RunResult result;
    result.exit_code = asserted_frozen ? 0 : 2;
    std::ostringstream summary;
    summary << "example2: " << rows.size() << " rows, ar_bits[0]=" << format_significant(ar_0)
            << ", frozen(t<" << scenario.level_spacing << ")="
            << (asserted_frozen ? "true" : "false");
    result.summary = summary.str();

    const std::string rule = "fock_dim=" + std::to_string(scenario.fock_dim) +
                             " (rule: (2M+1)*N + t_max + 2)";
    if (config.format == ReportFormat::csv) {
        result.report = render_csv(
            {
                "scenario=example2",
                "seed=" + std::to_string(config.seed),
                "freeze_tol=" + format_significant(config.freeze_tol),
                "N=" + std::to_string(scenario.level_spacing) +
                    " M=" + std::to_string(scenario.num_components() - 1) +
                    " t_max=" + std::to_string(scenario.t_max),
                rule,
                "amplitudes=" + amplitudes_echo(scenario.amplitudes),
            },
            {"t", "ar_bits", "trace", "frozen"}, rows);
    } else {
        json doc;
        doc["meta"] = meta_common(config, "example2");
        doc["meta"]["N"] = scenario.level_spacing;
        doc["meta"]["M"] = scenario.num_components() - 1;
        doc["meta"]["t_max"] = scenario.t_max;
        doc["meta"]["fock_dim"] = scenario.fock_dim;
        doc["meta"]["fock_dim_rule"] = "(2M+1)*N + t_max + 2";
        doc["meta"]["amplitudes"] = amplitudes_json(scenario.amplitudes);
        json out_rows = json::array();
        for (std::size_t t = 0; t < freeze.steps.size(); ++t) {
            json row;
            row["t"] = t;
            row["ar_bits"] = freeze.steps[t].values[0].value;
            row["trace"] = trajectory[t].trace_real();
            row["frozen"] = rows[t].back() == "true";
            out_rows.push_back(std::move(row));
        }
        doc["rows"] = std::move(out_rows);
        result.report = doc.dump(2) + "\n";
    }
    return result;
}

RunResult run_theorem(const RunConfig& config) {
    const SymmetryRep rep = cyclic(config.group_order, config.dim, config.charges);
    const TheoremCheckStats stats =
        theorem_check(rep, config.trials, config.dim, config.seed);

    RunResult result;
    result.exit_code = stats.clean() ? 0 : 2;
    std::ostringstream summary;
    summary << "theorem: trials=" << stats.trials << ", frozen=" << stats.frozen_count
            << ", clean=" << (stats.clean() ? "true" : "false");
    result.summary = summary.str();

    if (config.format == ReportFormat::json) {
        json doc;
        doc["trials"] = stats.trials;
        doc["frozen_count"] = stats.frozen_count;
        doc["max_ar_drop"] = stats.max_ar_drop;
        doc["max_measure_deviation"] = stats.max_measure_deviation;
        doc["max_recovery_residual"] = stats.max_recovery_residual;
        doc["monotonicity_violations"] = stats.monotonicity_violations;
        result.report = doc.dump(2) + "\n";
    } else {
        result.report = render_csv(
            {
                "scenario=theorem",
                "seed=" + std::to_string(config.seed),
                "trials=" + std::to_string(config.trials) + " dim=" + std::to_string(config.dim) +
                    " group_order=" + std::to_string(config.group_order),
            },
            {"trials", "frozen_count", "max_ar_drop", "max_measure_deviation",
             "max_recovery_residual", "monotonicity_violations"},
            {{std::to_string(stats.trials), std::to_string(stats.frozen_count),
              format_significant(stats.max_ar_drop),
              format_significant(stats.max_measure_deviation),
              format_significant(stats.max_recovery_residual),
              std::to_string(stats.monotonicity_violations)}});
    }
    return result;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const nlohmann::json::parse_error& err) {
        throw ConfigError(std::string("config: invalid JSON: ") + err.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config: top level must be a JSON object");
    }

    RunConfig config;
    config.scenario = parse_scenario(doc);
    reject_unknown_keys(doc, config.scenario);

    if (doc.contains("seed")) {
        const auto& seed = doc.at("seed");
        if (!seed.is_number_integer() || (seed.is_number_integer() && !seed.is_number_unsigned() &&
                                          seed.get<long long>() < 0)) {
            throw ConfigError("config: 'seed' must be a nonnegative integer");
        }
        config.seed = seed.get<std::uint64_t>();
    } else if (config.scenario == Scenario::theorem) {
        throw ConfigError("config: 'seed' is required for theorem runs");
    }

    config.format =
        config.scenario == Scenario::theorem ? ReportFormat::json : ReportFormat::csv;
    if (doc.contains("format")) {
        const auto& format = doc.at("format");
        if (!format.is_string()) {
            throw ConfigError("config: 'format' must be \"csv\" or \"json\"");
        }
        const std::string name = format.get<std::string>();
        if (name == "csv") {
            config.format = ReportFormat::csv;
        } else if (name == "json") {
            config.format = ReportFormat::json;
        } else {
            throw ConfigError("config: 'format' must be \"csv\" or \"json\"");
        }
    }
    if (doc.contains("out")) {
        if (!doc.at("out").is_string()) {
            throw ConfigError("config: 'out' must be a string path");
        }
        config.out_path = doc.at("out").get<std::string>();
    }
    config.freeze_tol = parse_double(doc, "freeze_tol", tol::kFreeze);
    if (!(config.freeze_tol > 0.0)) {
        throw ConfigError("config: 'freeze_tol' must be positive");
    }

    switch (config.scenario) {
        case Scenario::example1: {
            if (doc.contains("p_grid")) {
                const auto& grid = doc.at("p_grid");
                if (!grid.is_array()) {
                    throw ConfigError("config: 'p_grid' must be an array of numbers");
                }
                for (const auto& value : grid) {
                    if (!value.is_number()) {
                        throw ConfigError("config: 'p_grid' entries must be numbers");
                    }
                    const double p = value.get<double>();
                    if (!(p >= 0.0 && p <= 1.0)) {
                        throw ConfigError("config: 'p_grid' entries must lie in [0, 1]");
                    }
                    config.p_grid.push_back(p);
                }
            } else {
                config.p_grid = default_p_grid();
            }
            config.amplitudes =
                doc.contains("amplitudes") ? parse_amplitudes(doc) : equal_amplitudes(2);
            if (config.amplitudes.size() != 2) {
                throw ConfigError("config: example1 needs exactly 2 amplitudes");
            }
            break;
        }
        case Scenario::example2: {
            config.level_spacing = parse_int(doc, "N", 3, 1);
            const int num_extra = parse_int(doc, "M", 1, 0);
            config.t_max = parse_int(doc, "t_max", 2, 0);
            config.amplitudes = doc.contains("amplitudes") ? parse_amplitudes(doc)
                                                           : equal_amplitudes(num_extra + 1);
            if (doc.contains("M") &&
                config.amplitudes.size() != static_cast<std::size_t>(num_extra) + 1) {
                throw ConfigError("config: 'amplitudes' must have M + 1 entries");
            }
            config.fock_dim = parse_int(doc, "fock_dim", 0, 2);
            // Full validation of the guard band happens in Example2Config::make.
            try {
                Example2Config::make(config.level_spacing, config.amplitudes, config.t_max,
                                     config.fock_dim);
            } catch (const Error& err) {
                throw ConfigError(std::string("config: ") + err.what());
            }
            break;
        }
        case Scenario::theorem: {
            config.trials = parse_int(doc, "trials", 100, 0);
            config.dim = parse_int(doc, "dim", 6, 1);
            config.group_order = parse_int(doc, "group_order", 6, 1);
            if (doc.contains("charges")) {
                const auto& charges = doc.at("charges");
                if (!charges.is_array() ||
                    charges.size() != static_cast<std::size_t>(config.dim)) {
                    throw ConfigError("config: 'charges' must be an array of dim integers");
                }
                for (const auto& value : charges) {
                    if (!value.is_number_integer()) {
                        throw ConfigError("config: 'charges' entries must be integers");
                    }
                    config.charges.push_back(value.get<int>());
                }
            } else {
                for (Index j = 0; j < config.dim; ++j) {
                    config.charges.push_back(static_cast<int>(j));
                }
            }
            break;
        }
    }
    return config;
}

RunResult run(const RunConfig& config) {
    switch (config.scenario) {
        case Scenario::example1:
            return run_example1(config);
        case Scenario::example2:
            return run_example2(config);
        case Scenario::theorem:
            return run_theorem(config);
    }
    throw ConfigError("run: unreachable scenario");
}

void emit_report(const std::string& report, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(report.c_str(), stdout);
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw FileWriteError("emit_report: cannot open '" + out_path + "' for writing");
    }
    out << report;
    if (!out) {
        throw FileWriteError("emit_report: write to '" + out_path + "' failed");
    }
}

}  // namespace asym::cli
