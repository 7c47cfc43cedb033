#pragma once

namespace descentkit {

inline constexpr const char* kToolName = "descentkit";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace descentkit
