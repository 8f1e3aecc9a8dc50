#pragma once

namespace majorant {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kToolName = "majorant";

}  // namespace majorant
