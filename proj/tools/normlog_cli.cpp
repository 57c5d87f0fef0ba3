#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "normlog/checks.hpp"
#include "normlog/harness.hpp"
#include "normlog/io.hpp"
#include "normlog/suite.hpp"
#include "normlog/version.hpp"

namespace {

constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

int cmd_generate(const std::string& family, int n, std::uint64_t seed, const std::string& out) {
    normlog::InstanceSpec spec{normlog::family_from_name(family), n, seed, {}};
    const auto pair = normlog::make_pair(spec);
    normlog::write_text_file(out, normlog::pair_to_json(spec, pair));
    return 0;
}

int cmd_check(const std::string& name, const std::string& in, std::optional<int> k_lo,
              std::optional<int> k_hi, std::optional<double> tol_check, const std::string& report_path) {
    const auto file = normlog::pair_from_json(nlohmann::json::parse(normlog::read_text_file(in)));
    const int lo = k_lo.value_or(file.pair.metadata.value("k_lo", -1));
    const int hi = k_hi.value_or(file.pair.metadata.value("k_hi", 0));
    normlog::Tolerances tol;
    if (tol_check) tol.check = *tol_check;
    const auto report = normlog::run_check(name, file.pair.x, file.pair.y, lo, hi, tol);
    const auto row = normlog::result_to_json(report, normlog::family_name(file.spec.family), file.spec.n,
                                             file.spec.seed);
    const std::string text = row.dump(2) + "\n";
    if (report_path.empty()) {
        std::cout << text;
    } else {
        normlog::write_text_file(report_path, text);
    }
    std::fprintf(stderr, "%s: %s\n", report.check_name.c_str(),
                 !report.hypothesis_met ? "hypothesis not met" : report.passed ? "pass" : "FAIL");
    return report.hypothesis_met && !report.passed ? kExitFailed : 0;
}

int cmd_suite(const std::string& config_path, const std::string& report_path, std::optional<int> jobs) {
    normlog::SuiteConfig config;
    if (!config_path.empty()) {
        config = normlog::suite_config_from_json(nlohmann::json::parse(normlog::read_text_file(config_path)));
    }
    if (jobs) config.jobs = std::max(1, *jobs);
    const auto report = normlog::run_suite(config);
    const std::string text = normlog::suite_report_to_json(report);
    if (report_path.empty()) {
        std::cout << text;
    } else {
        normlog::write_text_file(report_path, text);
    }
    std::fprintf(stderr, "total %zu  passed %zu  skipped_hypothesis %zu  failed %zu\n", report.summary.total,
                 report.summary.passed, report.summary.skipped_hypothesis, report.summary.failed);
    return report.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Normal operator logarithm checks"};
    app.require_subcommand(1);

    std::string family, out;
    int n = 2;
    std::uint64_t seed = 0;
    auto* gen = app.add_subcommand("generate", "Generate an instance pair");
    gen->add_option("--family", family, "Instance family")->required();
    gen->add_option("--n", n, "Dimension")->required()->check(CLI::PositiveNumber);
    gen->add_option("--seed", seed, "Seed")->required();
    gen->add_option("--out", out, "Output pair file")->required();

    std::string check_name, in, report_path;
    std::optional<int> k_lo, k_hi;
    std::optional<double> tol_check;
    auto* chk = app.add_subcommand("check", "Run one check on a pair file");
    chk->add_option("--name", check_name, "Check name")->required();
    chk->add_option("--in", in, "Input pair file")->required();
    chk->add_option("--k-lo", k_lo, "Lower strip index");
    chk->add_option("--k-hi", k_hi, "Upper strip index");
    chk->add_option("--tol", tol_check, "Residual tolerance");
    chk->add_option("--report", report_path, "Report file (default stdout)");

    std::string config_path, suite_report;
    std::optional<int> jobs;
    auto* suite = app.add_subcommand("suite", "Run the property suite");
    suite->add_option("--config", config_path, "Suite config JSON");
    suite->add_option("--report", suite_report, "Report file (default stdout)");
    suite->add_option("--jobs", jobs, "Worker threads");

    app.add_subcommand("version", "Print the version");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (*gen) return cmd_generate(family, n, seed, out);
        if (*chk) return cmd_check(check_name, in, k_lo, k_hi, tol_check, report_path);
        if (*suite) return cmd_suite(config_path, suite_report, jobs);
        std::cout << normlog::kVersion << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
}
