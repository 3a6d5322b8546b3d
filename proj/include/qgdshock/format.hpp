#pragma once

#include <charconv>
#include <string>

namespace qgdshock {

// Shortest decimal representation that round-trips the double exactly.
inline std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec; // 32 bytes always suffice for the shortest form
    return std::string(buf, ptr);
}

} // namespace qgdshock
