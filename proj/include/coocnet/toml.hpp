#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <variant>

#include "coocnet/errors.hpp"
#include "coocnet/unicode.hpp"

namespace coocnet::toml {

// Minimal TOML reader: single-level [sections], bare keys, basic strings,
// integers, floats and booleans. Covers the pipeline config format; not a
// general TOML implementation.

using Value = std::variant<std::string, std::int64_t, double, bool>;
using Table = std::map<std::string, std::map<std::string, Value>>;

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (c == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
        if (c == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

inline std::string parse_basic_string(const std::string& raw, std::size_t line_no) {
    if (raw.size() < 2 || raw.front() != '"' || raw.back() != '"')
        throw UsageError("config line " + std::to_string(line_no) +
                         ": unterminated string");
    std::string out;
    for (std::size_t i = 1; i + 1 < raw.size(); ++i) {
        char c = raw[i];
        if (c != '\\') {
            out.push_back(c);
            continue;
        }
        if (++i + 1 >= raw.size() + 1)
            throw UsageError("config line " + std::to_string(line_no) +
                             ": dangling escape");
        switch (raw[i]) {
            case 'n': out.push_back('\n'); break;
            case 't': out.push_back('\t'); break;
            case 'r': out.push_back('\r'); break;
            case '"': out.push_back('"'); break;
            case '\\': out.push_back('\\'); break;
            case 'u': {
                if (i + 4 >= raw.size())
                    throw UsageError("config line " + std::to_string(line_no) +
                                     ": bad \\u escape");
                const std::string hex = raw.substr(i + 1, 4);
                char32_t cp = static_cast<char32_t>(std::stoul(hex, nullptr, 16));
                uni::encode(cp, out);
                i += 4;
                break;
            }
            default:
                throw UsageError("config line " + std::to_string(line_no) +
                                 ": unknown escape \\" + raw[i]);
        }
    }
    return out;
}

inline Value parse_value(const std::string& raw, std::size_t line_no) {
    if (!raw.empty() && raw.front() == '"') return parse_basic_string(raw, line_no);
    if (raw == "true") return true;
    if (raw == "false") return false;
    const bool looks_float = raw.find_first_of(".eE") != std::string::npos;
    try {
        std::size_t used = 0;
        if (looks_float) {
            const double d = std::stod(raw, &used);
            if (used == raw.size()) return d;
        } else {
            const std::int64_t v = std::stoll(raw, &used);
            if (used == raw.size()) return v;
        }
    } catch (const std::exception&) {
    }
    throw UsageError("config line " + std::to_string(line_no) +
                     ": cannot parse value '" + raw + "'");
}

}  // namespace detail

inline Table parse(std::istream& in) {
    Table table;
    std::string section;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        line = detail::trim(detail::strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw UsageError("config line " + std::to_string(line_no) +
                                 ": malformed section header");
            section = detail::trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw UsageError("config line " + std::to_string(line_no) +
                                 ": empty section name");
            table[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError("config line " + std::to_string(line_no) +
                             ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string raw = detail::trim(line.substr(eq + 1));
        if (key.empty())
            throw UsageError("config line " + std::to_string(line_no) + ": empty key");
        table[section][key] = detail::parse_value(raw, line_no);
    }
    return table;
}

inline Table parse(const std::string& text) {
    std::istringstream in(text);
    return parse(in);
}

}  // namespace coocnet::toml
