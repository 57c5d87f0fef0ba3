#pragma once

namespace normlog {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace normlog
