#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <string>

namespace coocnet {

// Shortest round-trip decimal form; integral values print without a point.
inline std::string format_double(double v) {
    if (std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15)
        return std::to_string(static_cast<std::int64_t>(v));
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

inline std::string format_fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return std::string(buf);
}

}  // namespace coocnet
