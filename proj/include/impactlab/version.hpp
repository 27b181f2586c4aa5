#pragma once

namespace impactlab {
inline constexpr const char* kToolVersion = "0.1.0";
} // namespace impactlab
