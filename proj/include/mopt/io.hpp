#pragma once

#include <charconv>
#include <stdexcept>
#include <string>

namespace mopt::io {

/// Shortest decimal form that round-trips the exact double.
inline std::string fmt(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

inline std::string fmt(long v) { return std::to_string(v); }
inline std::string fmt(int v) { return std::to_string(v); }

}  // namespace mopt::io
