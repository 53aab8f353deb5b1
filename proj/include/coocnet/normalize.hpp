#pragma once

#include <fstream>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "coocnet/corpus.hpp"
#include "coocnet/errors.hpp"
#include "coocnet/unicode.hpp"

namespace coocnet {

// Character-unification and half-space tables in the style of the Hazm
// normalizer. Defaults are embedded; both can be overridden from
// two-column TSV files.
struct HazmTables {
    std::map<char32_t, std::u32string> unify;
    std::set<std::u32string> prefixes;
    std::set<std::u32string> suffixes;

    static HazmTables defaults() {
        HazmTables t;
        auto& u = t.unify;
        u[U'ي'] = U"ی";  // Arabic yeh -> Persian yeh
        u[U'ى'] = U"ی";  // alef maksura -> Persian yeh
        u[U'ك'] = U"ک";  // Arabic kaf -> Persian kaf
        u[U'ڪ'] = U"ک";  // swash kaf -> Persian kaf
        u[U'أ'] = U"ا";  // alef with hamza above -> alef
        u[U'إ'] = U"ا";  // alef with hamza below -> alef
        u[U'ٱ'] = U"ا";  // alef wasla -> alef
        u[U'ة'] = U"ه";  // teh marbuta -> heh
        u[U'ؤ'] = U"و";  // waw with hamza -> waw
        u[U'ـ'] = U"";        // tatweel removed
        u[U'ﷲ'] = U"الله";          // Allah ligature
        u[U'ﻻ'] = U"لا";                      // lam-alef
        u[U'ﻷ'] = U"لا";                      // lam-alef hamza above
        u[U'ﻹ'] = U"لا";                      // lam-alef hamza below
        u[U'ﻵ'] = U"لآ";                      // lam-alef madda
        t.prefixes = {U"می", U"نمی"};  // می نمی
        t.suffixes = {
            U"ها",                      // ها
            U"های",                // های
            U"هایی",          // هایی
            U"تر",                      // تر
            U"تری",                // تری
            U"ترین",          // ترین
        };
        return t;
    }

    // `from<TAB>to` per line; `from` is one codepoint, `to` may be empty.
    void load_unify(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open unification table: " + path);
        unify.clear();
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            auto tab = line.find('\t');
            if (tab == std::string::npos)
                throw DataError("unification table line missing tab: " + line);
            std::u32string from = uni::decode_all(line.substr(0, tab));
            if (from.size() != 1)
                throw DataError("unification source must be one codepoint: " + line);
            unify[from[0]] = uni::decode_all(line.substr(tab + 1));
        }
    }

    // `prefix<TAB>affix` or `suffix<TAB>affix` per line.
    void load_affixes(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open affix list: " + path);
        prefixes.clear();
        suffixes.clear();
        std::string line;
        while (std::getline(in, line)) {
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            auto tab = line.find('\t');
            if (tab == std::string::npos)
                throw DataError("affix list line missing tab: " + line);
            std::string kind = line.substr(0, tab);
            std::u32string affix = uni::decode_all(line.substr(tab + 1));
            if (affix.empty()) throw DataError("empty affix in: " + line);
            if (kind == "prefix") prefixes.insert(affix);
            else if (kind == "suffix") suffixes.insert(affix);
            else throw DataError("affix kind must be prefix or suffix: " + line);
        }
    }
};

struct NormalizerConfig {
    bool emoji_punct = true;
    bool links_ids_hashtags = true;
    bool digits_fa_to_en = true;
    bool digit_letter_spacing = true;
    bool persian_charset_only = true;
    bool hazm_normalize = true;
    std::unordered_set<char32_t> charset_extra;
    HazmTables tables = HazmTables::defaults();

    void set_charset_extra(std::string_view utf8) {
        charset_extra.clear();
        for (char32_t cp : uni::decode_all(utf8)) charset_extra.insert(cp);
    }
};

struct CleanText {
    std::string text;
    std::string provenance;  // originating post id
};

namespace norm {

// Word-forming characters for mention/hashtag tokens.
inline bool is_tag_char(char32_t cp) {
    return uni::is_ascii_letter(cp) || uni::is_ascii_digit(cp) ||
           uni::is_arabic_letter(cp) || uni::is_persian_digit(cp) ||
           uni::is_arabic_diacritic(cp) || cp == U'_' || cp == U'.' ||
           cp == uni::kZwnj;
}

inline bool is_scheme_char(char32_t cp) {
    return uni::is_ascii_letter(cp) || uni::is_ascii_digit(cp) || cp == U'+' ||
           cp == U'-' || cp == U'.';
}

inline std::string strip_emoji_punct(std::string_view text) {
    std::u32string cps = uni::decode_all(text);
    std::u32string out;
    out.reserve(cps.size());
    for (char32_t cp : cps)
        out.push_back(uni::is_emoji(cp) || uni::is_punct(cp) ? U' ' : cp);
    return uni::encode_all(out);
}

namespace detail {

inline std::u32string strip_links_pass(const std::u32string& cps) {
    const std::size_t n = cps.size();
    std::u32string out;
    out.reserve(n);
    std::size_t i = 0;
    auto url_end = [&](std::size_t start) -> std::size_t {
        // scheme "://" form
        if (uni::is_ascii_letter(cps[start])) {
            std::size_t j = start;
            while (j < n && is_scheme_char(cps[j])) ++j;
            if (j + 2 < n && cps[j] == U':' && cps[j + 1] == U'/' &&
                cps[j + 2] == U'/') {
                std::size_t k = j + 3;
                while (k < n && !uni::is_space(cps[k])) ++k;
                return k;
            }
        }
        // bare "www." form
        if (start + 4 < n && cps[start] == U'w' && cps[start + 1] == U'w' &&
            cps[start + 2] == U'w' && cps[start + 3] == U'.' &&
            !uni::is_space(cps[start + 4])) {
            std::size_t k = start + 4;
            while (k < n && !uni::is_space(cps[k])) ++k;
            return k;
        }
        return start;
    };
    while (i < n) {
        if ((cps[i] == U'@' || cps[i] == U'#') && i + 1 < n &&
            is_tag_char(cps[i + 1])) {
            std::size_t j = i + 1;
            while (j < n && is_tag_char(cps[j])) ++j;
            i = j;
            continue;
        }
        if (std::size_t j = url_end(i); j > i) {
            i = j;
            continue;
        }
        out.push_back(cps[i]);
        ++i;
    }
    return out;
}

}  // namespace detail

// Removes URLs (scheme:// and www. forms), @-mentions, and whole hashtag
// tokens; matches are dropped without replacement. Removal can splice the
// surrounding text into a fresh match, so passes repeat until stable.
inline std::string strip_links_ids_hashtags(std::string_view text) {
    std::u32string cps = uni::decode_all(text);
    while (true) {
        std::u32string next = detail::strip_links_pass(cps);
        if (next == cps) break;
        cps = std::move(next);
    }
    return uni::encode_all(cps);
}

inline std::string digits_fa_to_en(std::string_view text) {
    std::u32string cps = uni::decode_all(text);
    for (char32_t& cp : cps) {
        if (cp >= 0x06F0 && cp <= 0x06F9) cp = U'0' + (cp - 0x06F0);
        else if (cp >= 0x0660 && cp <= 0x0669) cp = U'0' + (cp - 0x0660);
    }
    return uni::encode_all(cps);
}

inline std::string space_digit_letter_boundaries(std::string_view text) {
    auto is_digit = [](char32_t cp) {
        return uni::is_ascii_digit(cp) || uni::is_persian_digit(cp);
    };
    auto is_letter = [](char32_t cp) {
        return uni::is_ascii_letter(cp) || uni::is_arabic_letter(cp);
    };
    std::u32string cps = uni::decode_all(text);
    std::u32string out;
    out.reserve(cps.size() + 8);
    for (std::size_t i = 0; i < cps.size(); ++i) {
        out.push_back(cps[i]);
        if (i + 1 < cps.size()) {
            const bool boundary = (is_digit(cps[i]) && is_letter(cps[i + 1])) ||
                                  (is_letter(cps[i]) && is_digit(cps[i + 1]));
            if (boundary) out.push_back(U' ');
        }
    }
    return uni::encode_all(out);
}

// Keeps Persian-block letters, ASCII digits, space and ZWNJ (plus `extra`);
// any whitespace becomes a plain space, runs collapse to one, ends trimmed.
inline std::string restrict_charset(std::string_view text,
                                    const std::unordered_set<char32_t>& extra = {}) {
    std::u32string cps = uni::decode_all(text);
    std::u32string out;
    out.reserve(cps.size());
    bool pending_space = false;
    for (char32_t cp : cps) {
        if (uni::is_space(cp)) {
            pending_space = true;
            continue;
        }
        const bool allowed = uni::is_arabic_letter(cp) || uni::is_ascii_digit(cp) ||
                             cp == uni::kZwnj || extra.count(cp) > 0;
        if (!allowed) continue;
        if (pending_space && !out.empty()) out.push_back(U' ');
        pending_space = false;
        out.push_back(cp);
    }
    return uni::encode_all(out);
}

inline std::string hazm_normalize(std::string_view text,
                                  const HazmTables& tables = HazmTables::defaults()) {
    std::u32string mapped;
    for (char32_t cp : uni::decode_all(text)) {
        if (uni::is_arabic_diacritic(cp)) continue;
        auto it = tables.unify.find(cp);
        if (it != tables.unify.end()) mapped += it->second;
        else mapped.push_back(uni::is_space(cp) ? U' ' : cp);
    }
    // Tokenize on spaces, then reattach affixes with ZWNJ.
    std::vector<std::u32string> tokens;
    std::u32string cur;
    for (char32_t cp : mapped) {
        if (cp == U' ') {
            if (!cur.empty()) tokens.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(cp);
        }
    }
    if (!cur.empty()) tokens.push_back(std::move(cur));

    std::vector<std::u32string> joined;
    bool join_next = false;
    for (auto& tok : tokens) {
        if (join_next && !joined.empty()) {
            joined.back().push_back(uni::kZwnj);
            joined.back() += tok;
            join_next = false;
            continue;
        }
        join_next = false;
        if (!joined.empty() && tables.suffixes.count(tok)) {
            joined.back().push_back(uni::kZwnj);
            joined.back() += tok;
            continue;
        }
        if (tables.prefixes.count(tok)) join_next = true;
        joined.push_back(std::move(tok));
    }
    std::u32string out;
    for (std::size_t i = 0; i < joined.size(); ++i) {
        if (i) out.push_back(U' ');
        out += joined[i];
    }
    return uni::encode_all(out);
}

}  // namespace norm

// Composes the enabled steps. Execution order puts link/mention/hashtag
// removal ahead of punctuation stripping: the markers and URL syntax are
// punctuation, so running punctuation removal first would leave the tag
// words behind.
inline CleanText normalize_post(const RawPost& post, const NormalizerConfig& cfg) {
    std::string text = post.caption;
    if (cfg.links_ids_hashtags) text = norm::strip_links_ids_hashtags(text);
    if (cfg.emoji_punct) text = norm::strip_emoji_punct(text);
    if (cfg.digits_fa_to_en) text = norm::digits_fa_to_en(text);
    if (cfg.digit_letter_spacing) text = norm::space_digit_letter_boundaries(text);
    if (cfg.persian_charset_only)
        text = norm::restrict_charset(text, cfg.charset_extra);
    if (cfg.hazm_normalize) text = norm::hazm_normalize(text, cfg.tables);
    return CleanText{std::move(text), post.id};
}

inline std::string normalize_text(std::string_view caption,
                                  const NormalizerConfig& cfg) {
    RawPost p;
    p.caption = std::string(caption);
    return normalize_post(p, cfg).text;
}

}  // namespace coocnet
