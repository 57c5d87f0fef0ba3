#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "normlog/harness.hpp"
#include "normlog/report.hpp"

namespace normlog {

/// {"n": <int>, "entries": [[[re, im], ...], ...]}, row-major, reals with 17 significant digits.
std::string matrix_to_json(const ComplexMatrix& m);

/// Throws InvalidMatrix on malformed input (wrong shape, non-numeric or non-finite entries).
ComplexMatrix matrix_from_json(const nlohmann::json& j);

/// A generated instance as stored on disk.
struct PairFile {
    InstanceSpec spec;
    InstancePair pair;
};

std::string pair_to_json(const InstanceSpec& spec, const InstancePair& pair);
PairFile pair_from_json(const nlohmann::json& j);

/// Throws std::runtime_error when the file cannot be read or written.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

/// One entry of the report "results" array.
nlohmann::ordered_json result_to_json(const CheckReport& report, const std::string& family, int n,
                                      std::uint64_t seed);

}  // namespace normlog
