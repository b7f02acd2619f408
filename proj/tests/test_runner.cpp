#include <doctest.h>

#include <cmath>
#include <string>

#include <json.hpp>

#include "asym/runner.hpp"
#include "test_support.hpp"

using namespace asym;
using asym::cli::parse_config;
using asym::cli::ReportFormat;
using asym::cli::RunConfig;
using asym::cli::RunResult;
using asym::cli::Scenario;

namespace {

int count_data_rows(const std::string& csv) {
    int rows = 0;
    bool seen_header = false;
    std::size_t start = 0;
    while (start < csv.size()) {
        std::size_t end = csv.find('\n', start);
        if (end == std::string::npos) {
            end = csv.size();
        }
        const std::string line = csv.substr(start, end - start);
        if (!line.empty() && line[0] != '#') {
            if (seen_header) {
                ++rows;
            } else {
                seen_header = true;
            }
        }
        start = end + 1;
    }
    return rows;
}

}  // namespace

TEST_CASE("parse_config fills documented defaults") {
    const RunConfig ex1 = parse_config(R"({"scenario":"example1"})");
    CHECK(ex1.scenario == Scenario::example1);
    REQUIRE(ex1.p_grid.size() == 11);
    CHECK(ex1.p_grid.front() == 0.0);
    CHECK(ex1.p_grid.back() == 1.0);
    REQUIRE(ex1.amplitudes.size() == 2);
    CHECK(std::abs(ex1.amplitudes[0] - Complex(1.0 / std::sqrt(2.0), 0.0)) <= 1e-12);
    CHECK(ex1.format == ReportFormat::csv);
    CHECK(ex1.freeze_tol == 1e-9);

    const RunConfig ex2 = parse_config(R"({"scenario":"example2","N":3,"M":1,"t_max":2})");
    CHECK(ex2.level_spacing == 3);
    CHECK(ex2.t_max == 2);
    CHECK(ex2.fock_dim == 0);  // auto rule applies downstream
    CHECK(Example2Config::make(ex2.level_spacing, ex2.amplitudes, ex2.t_max).fock_dim == 13);

    const RunConfig thm = parse_config(R"({"scenario":"theorem","seed":42})");
    CHECK(thm.trials == 100);
    CHECK(thm.dim == 6);
    CHECK(thm.group_order == 6);
    CHECK(thm.seed == 42);
    CHECK(thm.format == ReportFormat::json);
    REQUIRE(thm.charges.size() == 6);
    CHECK(thm.charges[5] == 5);
}

TEST_CASE("parse_config rejects malformed input with named keys") {
    CHECK_THROWS_AS(parse_config("not json"), ConfigError);
    CHECK_THROWS_AS(parse_config("[1,2]"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"seed":1})"), ConfigError);               // no scenario
    CHECK_THROWS_AS(parse_config(R"({"scenario":"example9"})"), ConfigError);  // unknown name
    CHECK_THROWS_AS(parse_config(R"({"scenario":"theorem"})"), ConfigError);   // seed required
    CHECK_THROWS_AS(parse_config(R"({"scenario":"example1","trials":5})"),
                    ConfigError);  // key from another scenario
    CHECK_THROWS_AS(parse_config(R"({"scenario":"example1","p_grid":[2.0]})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"scenario":"example1","amplitudes":[1.0,1.0]})"),
                    ConfigError);  // not normalized
    CHECK_THROWS_AS(parse_config(R"({"scenario":"example2","fock_dim":5})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"scenario":"example2","M":2,"amplitudes":[1.0]})"),
                    ConfigError);  // M and amplitudes disagree
    CHECK_THROWS_AS(parse_config(R"({"scenario":"theorem","seed":42,"charges":[0,1]})"),
                    ConfigError);  // wrong charge count
}

TEST_CASE("example1 run emits 11 frozen rows with a constant asymmetry column") {
    const RunConfig config = parse_config(R"({"scenario":"example1"})");
    const RunResult result = asym::cli::run(config);
    CHECK(result.exit_code == 0);
    CHECK(count_data_rows(result.report) == 11);
    CHECK(result.report.find("p,ar_bits,skew,recovery_residual,frozen") != std::string::npos);
    CHECK(result.report.find("false") == std::string::npos);

    // Every row reports exactly 1 bit for the default equal amplitudes.
    std::size_t pos = 0;
    int one_bit_rows = 0;
    while ((pos = result.report.find(",1,", pos)) != std::string::npos) {
        ++one_bit_rows;
        pos += 1;
    }
    CHECK(one_bit_rows >= 11);
}

TEST_CASE("example1 run honors JSON format") {
    RunConfig config = parse_config(R"({"scenario":"example1","format":"json"})");
    const RunResult result = asym::cli::run(config);
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.report);
    CHECK(doc.at("rows").size() == 11);
    CHECK(doc.at("meta").at("scenario") == "example1");
    CHECK(std::abs(doc.at("rows")[0].at("ar_bits").get<double>() - 1.0) <= 1e-9);
}

TEST_CASE("empty sweep produces a header-only report") {
    const RunConfig config = parse_config(R"({"scenario":"example1","p_grid":[]})");
    const RunResult result = asym::cli::run(config);
    CHECK(result.exit_code == 0);
    CHECK(count_data_rows(result.report) == 0);
    CHECK(result.report.find("p,ar_bits,skew,recovery_residual,frozen") != std::string::npos);
}

TEST_CASE("example2 run freezes for every row and prints the truncation rule") {
    const RunConfig config = parse_config(R"({"scenario":"example2","N":3,"M":1,"t_max":2})");
    const RunResult result = asym::cli::run(config);
    CHECK(result.exit_code == 0);
    CHECK(count_data_rows(result.report) == 3);
    CHECK(result.report.find("t,ar_bits,trace,frozen") != std::string::npos);
    CHECK(result.report.find("fock_dim=13") != std::string::npos);
    CHECK(result.report.find("false") == std::string::npos);
}

TEST_CASE("theorem run reports the documented keys and passes") {
    const RunConfig config =
        parse_config(R"({"scenario":"theorem","seed":42,"trials":25})");
    const RunResult result = asym::cli::run(config);
    CHECK(result.exit_code == 0);
    const auto doc = nlohmann::json::parse(result.report);
    CHECK(doc.at("trials") == 25);
    CHECK(doc.at("monotonicity_violations") == 0);
    CHECK(doc.contains("frozen_count"));
    CHECK(doc.contains("max_ar_drop"));
    CHECK(doc.contains("max_measure_deviation"));
    CHECK(doc.contains("max_recovery_residual"));
}

TEST_CASE("identical config and seed give byte-identical reports") {
    for (const char* text :
         {R"({"scenario":"example1"})", R"({"scenario":"example2"})",
          R"({"scenario":"theorem","seed":7,"trials":10})",
          R"({"scenario":"theorem","seed":7,"trials":10,"format":"csv"})"}) {
        const RunConfig config = parse_config(text);
        const RunResult first = asym::cli::run(config);
        const RunResult second = asym::cli::run(config);
        CHECK(first.report == second.report);
        CHECK(first.exit_code == second.exit_code);
    }
}

TEST_CASE("an unattainable tolerance trips the exit-code contract") {
    RunConfig config = parse_config(R"({"scenario":"example1","freeze_tol":1e-18})");
    const RunResult result = asym::cli::run(config);
    CHECK(result.exit_code == 2);
    CHECK(result.report.find("false") != std::string::npos);
}

TEST_CASE("format_significant keeps 12 significant digits") {
    CHECK(asym::cli::format_significant(1.0) == "1");
    CHECK(asym::cli::format_significant(0.5) == "0.5");
    CHECK(asym::cli::format_significant(1.0 / 3.0) == "0.333333333333");
    CHECK(asym::cli::format_significant(1e-9) == "1e-09");
}
