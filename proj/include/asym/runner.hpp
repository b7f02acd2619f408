#pragma once

// Batch front end behind the command-line tool: scenario configs, the JSON
// config parser, report rendering (CSV/JSON) and the run driver. Reports are
// deterministic: identical (config, seed) must produce byte-identical output.

#include <cstdint>
#include <string>
#include <vector>

#include "asym/scenarios.hpp"
#include "asym/types.hpp"

namespace asym::cli {

enum class Scenario { example1, example2, theorem };
enum class ReportFormat { csv, json };

struct RunConfig {
    Scenario scenario = Scenario::example1;
    std::uint64_t seed = 0;
    ReportFormat format = ReportFormat::csv;
    std::string out_path;  // empty -> stdout
    double freeze_tol = tol::kFreeze;

    // example1: sweep grid and state amplitudes (shared with example2)
    std::vector<double> p_grid;
    std::vector<Complex> amplitudes;

    // example2
    int level_spacing = 3;  // config key "N"
    int t_max = 2;
    Index fock_dim = 0;  // 0 -> auto rule

    // theorem
    int trials = 100;
    Index dim = 6;
    int group_order = 6;
    std::vector<int> charges;
};

// Parses and fully validates a flat JSON object; unknown keys, missing
// required keys (seed for theorem runs) and out-of-range values all raise
// ConfigError naming the offending key.
RunConfig parse_config(const std::string& json_text);

struct RunResult {
    int exit_code = 0;   // 0 pass, 2 invariant failure
    std::string report;  // rendered body, ready to write
    std::string summary; // one human-readable line
};

RunResult run(const RunConfig& config);

// Writes to out_path, or stdout when the path is empty.
void emit_report(const std::string& report, const std::string& out_path);

// Shortest representation capped at 12 significant digits.
std::string format_significant(double value);

}  // namespace asym::cli
