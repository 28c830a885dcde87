#pragma once

namespace pgst {

inline constexpr const char* kToolName = "pgst";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace pgst
