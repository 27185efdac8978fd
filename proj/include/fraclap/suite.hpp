#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace fraclap {

/// Which checks to run and across which grid. Optional fields fall back to
/// per-suite defaults; an explicitly empty grid yields an empty report.
struct SuiteConfig {
    std::string suite;
    int dim = 2;
    std::optional<std::vector<double>> s_values;
    std::optional<std::vector<std::string>> presets;
    std::uint64_t seed = 42;
    long mc_samples = 1000000;
    int angular_rule = 0; // 0 = suite default
    int n_threads = 0;
    std::string out_path;
    std::string csv_path;
};

struct CheckRecord {
    std::string id;
    std::string suite;
    nlohmann::json inputs;
    double value = 0;
    double oracle = 0;
    double err_est = 0;
    double tol = 0;
    bool pass = false;
    double ms = 0;
    std::string note;
};

struct Report {
    std::string version;
    nlohmann::json config;
    std::vector<CheckRecord> records;
    int total = 0;
    int passed = 0;
    int failed = 0;
};

/// Names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// Executes the named suite; numerical failures become failed records, not
/// crashes. Writes the report when the config names output paths.
Report run_suite(const SuiteConfig& config);

nlohmann::json report_to_json(const Report& report);
void write_report(const Report& report, const std::string& json_path,
                  const std::string& csv_path);

/// key = value file, '#' comments; flags override parsed values downstream.
SuiteConfig parse_config_file(const std::string& path);

} // namespace fraclap
