#pragma once

namespace dyncorr {

inline constexpr const char* kToolName = "dyncorr";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace dyncorr
