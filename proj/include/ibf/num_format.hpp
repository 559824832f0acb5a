#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace ibf {

/// Shortest round-trip decimal form of a double; locale-independent, so
/// identical inputs always serialize to identical bytes.
inline std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

} // namespace ibf
