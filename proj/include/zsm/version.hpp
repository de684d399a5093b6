#pragma once

namespace zsm {

inline constexpr const char* kToolVersion = "0.1.0";

} // namespace zsm
