#pragma once

#include <stdexcept>
#include <string>

namespace normlog {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define NORMLOG_DEFINE_ERROR(Name)                                   \
    class Name : public Error {                                      \
    public:                                                          \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

NORMLOG_DEFINE_ERROR(InvalidMatrix);
NORMLOG_DEFINE_ERROR(NotHermitian);
NORMLOG_DEFINE_ERROR(NotNormal);
NORMLOG_DEFINE_ERROR(NotCommuting);
NORMLOG_DEFINE_ERROR(NoConvergence);
NORMLOG_DEFINE_ERROR(AmbiguousBoundary);
NORMLOG_DEFINE_ERROR(SpectrumOutOfRange);
NORMLOG_DEFINE_ERROR(OutOfFoldRange);
NORMLOG_DEFINE_ERROR(Singular);
NORMLOG_DEFINE_ERROR(ExpNotNormal);
NORMLOG_DEFINE_ERROR(ConstructionFailed);

#undef NORMLOG_DEFINE_ERROR

}  // namespace normlog
