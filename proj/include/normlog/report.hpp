#pragma once

#include <map>
#include <string>

namespace normlog {

/// Outcome of one verification. `passed` implies `hypothesis_met`.
struct CheckReport {
    std::string check_name;
    bool passed = false;
    bool hypothesis_met = false;
    std::map<std::string, double> residuals;
    std::map<std::string, double> tolerances;
    std::string notes;

    /// NaN, infinite or negative values are stored as DBL_MAX with a note.
    void set_residual(const std::string& name, double value);
    void append_note(const std::string& note);
};

}  // namespace normlog
