#pragma once

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <string_view>

namespace coocnet::log {

enum class Level { kDebug = 0, kInfo = 1, kWarn = 2, kError = 3 };

inline Level level_from_env() {
    const char* v = std::getenv("COOCNET_LOG");
    if (!v) return Level::kInfo;
    std::string s(v);
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (s == "debug") return Level::kDebug;
    if (s == "info") return Level::kInfo;
    if (s == "warn" || s == "warning") return Level::kWarn;
    if (s == "error") return Level::kError;
    return Level::kInfo;
}

inline Level& threshold() {
    static Level lvl = level_from_env();
    return lvl;
}

inline void write(Level lvl, std::string_view tag, std::string_view msg) {
    if (lvl < threshold()) return;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    std::cerr << "[" << tag << "] " << msg << "\n";
}

inline void debug(std::string_view msg) { write(Level::kDebug, "debug", msg); }
inline void info(std::string_view msg) { write(Level::kInfo, "info", msg); }
inline void warn(std::string_view msg) { write(Level::kWarn, "warn", msg); }
inline void error(std::string_view msg) { write(Level::kError, "error", msg); }

}  // namespace coocnet::log
