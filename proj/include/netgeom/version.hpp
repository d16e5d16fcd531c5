#pragma once

namespace netgeom {

inline constexpr const char* kToolName = "netgeom";
inline constexpr const char* kVersion = "0.1.0";

} // namespace netgeom
