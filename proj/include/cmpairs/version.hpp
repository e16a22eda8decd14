#pragma once

namespace cmpairs {

inline constexpr const char* kToolName = "cmpairs";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace cmpairs
