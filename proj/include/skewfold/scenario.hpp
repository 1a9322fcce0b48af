#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace skewfold {

/// One quantitative check inside a scenario report.
struct CheckResult {
    std::string name;
    double target = 0.0;
    double estimate = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct ScenarioReport {
    std::string scenario;
    nlohmann::json parameters;        // full echo, including the seed
    std::vector<CheckResult> checks;
    double wall_clock_s = 0.0;
    std::size_t n_workers = 1;

    bool all_passed() const;

    /// Serialized report.  The volatile runtime block (wall clock, worker
    /// count) is separate from the deterministic payload.
    nlohmann::json to_json() const;
};

struct ScenarioConfig {
    std::string scenario;
    nlohmann::json params;            // scenario-specific keys
    std::uint64_t master_seed = 0;
    std::string out_dir;              // empty: no CSV/JSON files written
    std::size_t n_workers = 0;        // 0: hardware concurrency

    static ScenarioConfig from_json(const nlohmann::json& j);
    static ScenarioConfig from_file(const std::string& path);
};

/// Names of all runnable scenarios, with a one-line description each.
std::vector<std::pair<std::string, std::string>> list_scenarios();

/// Execute a scenario: simulate, evaluate its checks, optionally write the
/// CSV path samples and JSON report under config.out_dir.
ScenarioReport run_scenario(const ScenarioConfig& config);

}  // namespace skewfold
