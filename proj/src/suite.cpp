#include "normlog/suite.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>
#include <thread>

#include "normlog/checks.hpp"
#include "normlog/io.hpp"

namespace normlog {

namespace {

struct TolField {
    const char* key;
    double Tolerances::*field;
};

constexpr TolField kTolFields[] = {
    {"herm", &Tolerances::herm},         {"norm", &Tolerances::norm},
    {"eig", &Tolerances::eig},           {"comm", &Tolerances::comm},
    {"check", &Tolerances::check},       {"rank", &Tolerances::rank},
    {"boundary", &Tolerances::boundary}, {"snap", &Tolerances::snap},
    {"cluster", &Tolerances::cluster},   {"point", &Tolerances::point},
    {"integer", &Tolerances::integer},   {"inv", &Tolerances::inv},
    {"jacobi_stop", &Tolerances::jacobi_stop},
};

}  // namespace

SuiteConfig suite_config_from_json(const nlohmann::json& j) {
    SuiteConfig c;
    if (!j.is_object()) throw std::invalid_argument("suite config must be a JSON object");
    if (j.contains("name")) c.name = j["name"].get<std::string>();
    if (j.contains("families")) {
        c.families.clear();
        for (const auto& f : j["families"]) c.families.push_back(family_from_name(f.get<std::string>()));
    }
    if (j.contains("sizes")) {
        c.sizes = j["sizes"].get<std::vector<int>>();
        for (int n : c.sizes) {
            if (n < 1) throw std::invalid_argument("sizes must be >= 1");
        }
    }
    if (j.contains("seeds")) c.seeds = j["seeds"].get<int>();
    if (c.seeds < 0) throw std::invalid_argument("seeds must be >= 0");
    if (j.contains("base_seed")) c.base_seed = j["base_seed"].get<std::uint64_t>();
    if (j.contains("jobs")) c.jobs = std::max(1, j["jobs"].get<int>());
    if (j.contains("tol_check")) c.tol.check = j["tol_check"].get<double>();
    if (j.contains("tolerances")) {
        for (const auto& [key, value] : j["tolerances"].items()) {
            if (key == "max_sweeps") {
                c.tol.max_sweeps = value.get<int>();
                continue;
            }
            const auto* it = std::find_if(std::begin(kTolFields), std::end(kTolFields),
                                          [&](const TolField& f) { return key == f.key; });
            if (it == std::end(kTolFields)) throw std::invalid_argument("unknown tolerance: " + key);
            c.tol.*(it->field) = value.get<double>();
        }
    }
    return c;
}

nlohmann::ordered_json suite_config_to_json(const SuiteConfig& config) {
    nlohmann::ordered_json j;
    j["name"] = config.name;
    j["families"] = nlohmann::ordered_json::array();
    for (Family f : config.families) j["families"].push_back(family_name(f));
    j["sizes"] = config.sizes;
    j["seeds"] = config.seeds;
    j["base_seed"] = config.base_seed;
    nlohmann::ordered_json tol;
    for (const auto& f : kTolFields) tol[f.key] = config.tol.*(f.field);
    tol["max_sweeps"] = config.tol.max_sweeps;
    j["tolerances"] = tol;
    return j;
}

std::vector<std::string> checks_for_family(Family family) {
    switch (family) {
        case Family::InteriorPair:
        case Family::BoundaryFlipPair:
            return {"check_real_part",       "check_spectral_agreement", "check_modulus_equal",
                    "check_modulus_commute", "check_square_commute",     "check_difference_formula",
                    "check_corollary_cases"};
        case Family::DistinctProjectionPair:
            return {"check_real_part",       "check_spectral_agreement", "check_modulus_equal",
                    "check_modulus_commute", "check_square_commute",     "check_difference_formula"};
        case Family::ShiftedBranchPair:
            return {"check_real_part", "check_difference_formula"};
        case Family::NonNormalLogPair:
            return {"check_modulus_commute", "check_square_commute", "kurepa_decompose"};
        case Family::SelfAdjointCongruenceFree:
            return {"check_congruence_free", "check_double_commutant",
                    "check_one_boundary_eigenvalue", "check_y_in_bicommutant_of_exp"};
        case Family::OddPiEigenvalue:
            return {"check_double_commutant", "check_one_boundary_eigenvalue"};
    }
    return {};
}

std::vector<CheckReport> run_instance(const InstanceSpec& spec, const Tolerances& tol) {
    std::vector<CheckReport> out;
    InstancePair pair;
    try {
        pair = make_pair(spec);
    } catch (const std::exception& e) {
        CheckReport r;
        r.check_name = "make_pair";
        r.hypothesis_met = true;
        r.notes = std::string("error: ") + e.what();
        out.push_back(std::move(r));
        return out;
    }
    const int k_lo = pair.metadata.value("k_lo", -1);
    const int k_hi = pair.metadata.value("k_hi", 0);
    for (const auto& name : checks_for_family(spec.family)) {
        try {
            out.push_back(run_check(name, pair.x, pair.y, k_lo, k_hi, tol));
        } catch (const std::exception& e) {
            CheckReport r;
            r.check_name = name;
            r.hypothesis_met = true;
            r.notes = std::string("error: ") + e.what();
            out.push_back(std::move(r));
        }
    }
    return out;
}

SuiteReport run_suite(const SuiteConfig& config) {
    std::vector<InstanceSpec> specs;
    for (Family f : config.families) {
        for (int n : config.sizes) {
            for (int s = 0; s < config.seeds; ++s) {
                specs.push_back(InstanceSpec{f, n, config.base_seed + static_cast<std::uint64_t>(s), {}});
            }
        }
    }
    std::vector<std::vector<CheckReport>> results(specs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < specs.size(); i = next++) {
            results[i] = run_instance(specs[i], config.tol);
        }
    };
    const int jobs = std::max(1, std::min<int>(config.jobs, static_cast<int>(std::max<std::size_t>(specs.size(), 1))));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    }

    SuiteReport report;
    report.config = config;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        for (auto& r : results[i]) {
            ++report.summary.total;
            if (!r.hypothesis_met) {
                ++report.summary.skipped_hypothesis;
            } else if (r.passed) {
                ++report.summary.passed;
            } else {
                ++report.summary.failed;
            }
            report.rows.push_back(SuiteRow{i, specs[i].family, specs[i].n, specs[i].seed, std::move(r)});
        }
    }
    return report;
}

std::string suite_report_to_json(const SuiteReport& report) {
    nlohmann::ordered_json j;
    j["suite"] = report.config.name;
    j["config"] = suite_config_to_json(report.config);
    j["results"] = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        j["results"].push_back(result_to_json(row.report, family_name(row.family), row.n, row.seed));
    }
    j["summary"] = {{"total", report.summary.total},
                    {"passed", report.summary.passed},
                    {"skipped_hypothesis", report.summary.skipped_hypothesis},
                    {"failed", report.summary.failed}};
    return j.dump(2) + "\n";
}

}  // namespace normlog
