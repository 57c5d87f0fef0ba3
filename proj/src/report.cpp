#include "normlog/report.hpp"

#include <cmath>
#include <limits>

namespace normlog {

void CheckReport::set_residual(const std::string& name, double value) {
    if (!std::isfinite(value) || value < 0.0) {
        append_note("residual '" + name + "' was not a finite non-negative number");
        value = std::numeric_limits<double>::max();
    }
    residuals[name] = value;
}

void CheckReport::append_note(const std::string& note) {
    if (!notes.empty()) notes += "; ";
    notes += note;
}

}  // namespace normlog
