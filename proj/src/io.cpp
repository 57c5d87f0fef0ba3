#include "normlog/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "normlog/errors.hpp"

namespace normlog {

namespace {

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string matrix_to_json(const ComplexMatrix& m) {
    require_valid(m, "serialized matrix");
    std::string out = "{\"n\": " + std::to_string(m.rows()) + ", \"entries\": [";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out += i ? ", [" : "[";
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out += ", ";
            out += "[" + format_real(m(i, j).real()) + ", " + format_real(m(i, j).imag()) + "]";
        }
        out += "]";
    }
    out += "]}";
    return out;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("entries")) {
        throw InvalidMatrix("matrix object needs \"n\" and \"entries\"");
    }
    if (!j["n"].is_number_integer() || j["n"].get<long long>() < 1) {
        throw InvalidMatrix("\"n\" must be a positive integer");
    }
    const auto n = j["n"].get<Eigen::Index>();
    const auto& rows = j["entries"];
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n) {
        throw InvalidMatrix("\"entries\" must have n rows");
    }
    ComplexMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
            throw InvalidMatrix("row " + std::to_string(i) + " must have n entries");
        }
        for (Eigen::Index c = 0; c < n; ++c) {
            const auto& e = row[static_cast<std::size_t>(c)];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
                throw InvalidMatrix("entry must be [re, im]");
            }
            m(i, c) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    }
    require_valid(m, "parsed matrix");
    return m;
}

std::string pair_to_json(const InstanceSpec& spec, const InstancePair& pair) {
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : spec.params) params[k] = v;
    std::string out = "{\n";
    out += "  \"family\": " + nlohmann::json(family_name(spec.family)).dump() + ",\n";
    out += "  \"n\": " + std::to_string(spec.n) + ",\n";
    out += "  \"seed\": " + std::to_string(spec.seed) + ",\n";
    out += "  \"params\": " + params.dump() + ",\n";
    out += "  \"metadata\": " + pair.metadata.dump() + ",\n";
    out += "  \"X\": " + matrix_to_json(pair.x) + ",\n";
    out += "  \"Y\": " + matrix_to_json(pair.y) + "\n";
    out += "}\n";
    return out;
}

PairFile pair_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("X") || !j.contains("Y")) {
        throw std::runtime_error("pair file needs \"X\" and \"Y\"");
    }
    PairFile f;
    f.pair.x = matrix_from_json(j["X"]);
    f.pair.y = matrix_from_json(j["Y"]);
    if (f.pair.x.rows() != f.pair.y.rows()) throw InvalidMatrix("X and Y differ in dimension");
    f.spec.n = static_cast<int>(f.pair.x.rows());
    if (j.contains("family")) f.spec.family = family_from_name(j["family"].get<std::string>());
    if (j.contains("seed")) f.spec.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("params")) {
        for (const auto& [k, v] : j["params"].items()) f.spec.params[k] = v.get<double>();
    }
    if (j.contains("metadata")) f.pair.metadata = j["metadata"];
    f.pair.link = f.pair.metadata.value("link", std::string("exp")) == "exp_i" ? Link::ExpI : Link::Exp;
    return f;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw std::runtime_error("write to " + path + " failed");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::ordered_json result_to_json(const CheckReport& report, const std::string& family, int n,
                                      std::uint64_t seed) {
    nlohmann::ordered_json r;
    r["check"] = report.check_name;
    r["family"] = family;
    r["n"] = n;
    r["seed"] = seed;
    r["hypothesis_met"] = report.hypothesis_met;
    r["passed"] = report.passed;
    r["residuals"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : report.residuals) r["residuals"][k] = v;
    r["tolerances"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : report.tolerances) r["tolerances"][k] = v;
    r["notes"] = report.notes;
    return r;
}

}  // namespace normlog
