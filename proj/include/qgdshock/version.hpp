#pragma once

namespace qgdshock {

inline constexpr const char* kVersion = "0.1.0";

} // namespace qgdshock
