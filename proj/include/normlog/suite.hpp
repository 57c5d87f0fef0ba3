#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "normlog/harness.hpp"
#include "normlog/report.hpp"
#include "normlog/tolerances.hpp"

namespace normlog {

struct SuiteConfig {
    std::string name = "default";
    std::vector<Family> families = all_families();
    std::vector<int> sizes = {2, 4, 8, 16};
    int seeds = 25;
    std::uint64_t base_seed = 1;
    Tolerances tol;
    int jobs = 1;
};

/// Reads {"name", "families", "sizes", "seeds", "base_seed", "jobs", "tol_check", "tolerances": {...}};
/// every key is optional. Throws std::invalid_argument on bad values.
SuiteConfig suite_config_from_json(const nlohmann::json& j);
nlohmann::ordered_json suite_config_to_json(const SuiteConfig& config);

struct SuiteRow {
    std::size_t instance_id = 0;
    Family family = Family::InteriorPair;
    int n = 0;
    std::uint64_t seed = 0;
    CheckReport report;
};

struct SuiteSummary {
    std::size_t total = 0;
    std::size_t passed = 0;
    std::size_t skipped_hypothesis = 0;
    std::size_t failed = 0;
};

struct SuiteReport {
    SuiteConfig config;
    std::vector<SuiteRow> rows;  // sorted by instance id, then dispatch order
    SuiteSummary summary;

    int exit_code() const { return summary.failed == 0 ? 0 : 1; }
};

/// Checks run on an instance of each family, in dispatch order.
std::vector<std::string> checks_for_family(Family family);

/// Runs every check dispatched to `family` on one instance. Errors thrown by a
/// generator or a check become failed rows.
std::vector<CheckReport> run_instance(const InstanceSpec& spec, const Tolerances& tol);

SuiteReport run_suite(const SuiteConfig& config);

/// {"suite", "config", "results", "summary"}; byte-identical for identical configs.
std::string suite_report_to_json(const SuiteReport& report);

}  // namespace normlog
