#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "coocnet/unicode_tables.hpp"

namespace coocnet::uni {

inline constexpr char32_t kZwnj = 0x200C;
inline constexpr char32_t kZwj = 0x200D;
inline constexpr char32_t kReplacement = 0xFFFD;

// Decodes one UTF-8 sequence starting at `pos`; advances `pos` past it.
// Ill-formed bytes decode to U+FFFD and consume a single byte.
inline char32_t decode(std::string_view s, std::size_t& pos) {
    const auto byte = [&](std::size_t i) -> std::uint8_t {
        return static_cast<std::uint8_t>(s[i]);
    };
    const std::uint8_t b0 = byte(pos);
    if (b0 < 0x80) {
        ++pos;
        return b0;
    }
    int len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        ++pos;
        return kReplacement;
    }
    if (pos + len > s.size()) {
        ++pos;
        return kReplacement;
    }
    for (int i = 1; i < len; ++i) {
        const std::uint8_t b = byte(pos + i);
        if ((b & 0xC0) != 0x80) {
            ++pos;
            return kReplacement;
        }
        cp = (cp << 6) | (b & 0x3F);
    }
    // Reject overlong forms and surrogates.
    static constexpr char32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        ++pos;
        return kReplacement;
    }
    pos += len;
    return cp;
}

inline void encode(char32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

inline std::u32string decode_all(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    std::size_t pos = 0;
    while (pos < s.size()) out.push_back(decode(s, pos));
    return out;
}

inline std::string encode_all(std::u32string_view cps) {
    std::string out;
    out.reserve(cps.size() * 2);
    for (char32_t cp : cps) encode(cp, out);
    return out;
}

inline bool in_ranges(char32_t cp, const CpRange* ranges, std::size_t count) {
    const CpRange* end = ranges + count;
    const CpRange* it = std::upper_bound(
        ranges, end, cp, [](char32_t v, const CpRange& r) { return v < r.lo; });
    return it != ranges && cp <= (it - 1)->hi;
}

inline bool is_punct(char32_t cp) {
    return in_ranges(cp, kPunctRanges, std::size(kPunctRanges));
}

// The emoji blocks the normalizer strips: Misc Symbols & Pictographs,
// Emoticons, Transport & Map, Supplemental Symbols & Pictographs, regional
// indicator flags, plus variation selectors and ZWJ used in sequences.
inline bool is_emoji(char32_t cp) {
    return (cp >= 0x1F300 && cp <= 0x1F5FF) || (cp >= 0x1F600 && cp <= 0x1F64F) ||
           (cp >= 0x1F680 && cp <= 0x1F6FF) || (cp >= 0x1F900 && cp <= 0x1F9FF) ||
           (cp >= 0x1F1E6 && cp <= 0x1F1FF) || (cp >= 0xFE00 && cp <= 0xFE0F) ||
           cp == kZwj;
}

inline bool is_ascii_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

inline bool is_persian_digit(char32_t cp) {
    return (cp >= 0x06F0 && cp <= 0x06F9) || (cp >= 0x0660 && cp <= 0x0669);
}

// Letters of the Arabic block as used in Persian text, including the
// Arabic-only forms the unification table later folds into Persian ones.
inline bool is_arabic_letter(char32_t cp) {
    return (cp >= 0x0620 && cp <= 0x063F) || (cp >= 0x0641 && cp <= 0x064A) ||
           (cp >= 0x066E && cp <= 0x066F) || (cp >= 0x0671 && cp <= 0x06D3) ||
           cp == 0x06D5 || (cp >= 0x06EE && cp <= 0x06EF) ||
           (cp >= 0x06FA && cp <= 0x06FC) || cp == 0x06FF || cp == 0x0640;
}

inline bool is_ascii_letter(char32_t cp) {
    return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
}

// Arabic combining marks (tanwin, fatha..sukun) dropped by normalization.
inline bool is_arabic_diacritic(char32_t cp) { return cp >= 0x064B && cp <= 0x0652; }

inline bool is_space(char32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' ||
           cp == '\v' || cp == 0x85 ||
           in_ranges(cp, kSpaceSeparatorRanges, std::size(kSpaceSeparatorRanges));
}

}  // namespace coocnet::uni
