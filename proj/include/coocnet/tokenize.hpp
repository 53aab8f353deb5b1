#pragma once

#include <fstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "coocnet/corpus.hpp"
#include "coocnet/errors.hpp"
#include "coocnet/normalize.hpp"
#include "coocnet/unicode.hpp"

namespace coocnet {

struct TokenDoc {
    std::string post_id;
    std::vector<std::string> tokens;       // full token stream, in order
    std::vector<std::string> kept_tokens;  // after stoplist / tag / number filters

    friend bool operator==(const TokenDoc&, const TokenDoc&) = default;
};

enum class Tag { kNoun, kAdj, kOther };

// Token -> tag map; lookups default to OTHER for unknown tokens.
class TagAnnotation {
  public:
    TagAnnotation() = default;

    void set(const std::string& token, Tag tag) { map_[token] = tag; }

    Tag lookup(const std::string& token) const {
        auto it = map_.find(token);
        return it == map_.end() ? Tag::kOther : it->second;
    }

    std::size_t size() const { return map_.size(); }

    // TSV `token<TAB>TAG`, TAG in {NOUN, ADJ, OTHER}.
    static TagAnnotation load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open annotation file: " + path);
        TagAnnotation ann;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty() || line[0] == '#') continue;
            auto tab = line.find('\t');
            if (tab == std::string::npos)
                throw DataError("annotation line " + std::to_string(line_no) +
                                " missing tab");
            std::string token = line.substr(0, tab);
            std::string tag = line.substr(tab + 1);
            if (tag == "NOUN") ann.set(token, Tag::kNoun);
            else if (tag == "ADJ") ann.set(token, Tag::kAdj);
            else if (tag == "OTHER") ann.set(token, Tag::kOther);
            else
                throw DataError("annotation line " + std::to_string(line_no) +
                                ": unknown tag '" + tag + "'");
        }
        return ann;
    }

  private:
    std::unordered_map<std::string, Tag> map_;
};

enum class TagFilterMode { kPassthrough, kAnnotated };

struct TokenizerConfig {
    bool stopwords = true;
    std::unordered_set<std::string> stoplist;  // empty -> builtin default
    TagFilterMode tag_mode = TagFilterMode::kPassthrough;
    TagAnnotation annotations;
    bool keep_numbers = false;
};

inline const std::unordered_set<std::string>& default_persian_stoplist() {
    static const std::unordered_set<std::string> kList = {
        "از", "به", "با", "در", "که", "را", "و", "این", "آن", "برای",
        "تا", "بر", "هم", "نیز", "یا", "اما", "اگر", "هر", "من", "تو",
        "او", "ما", "شما", "آنها", "ایشان", "خود", "است", "هست", "نیست",
        "بود", "شد", "شده", "باشد", "شود", "کرد", "کرده", "کند", "دارد",
        "داشت", "باید", "نباید", "ولی", "پس", "چون", "چرا", "چه", "هیچ",
        "همه", "فقط", "حتی", "دیگر", "همین", "همان", "بین", "روی", "یک",
        "دو", "سه", "چند", "وی", "ای", "البته", "آیا", "اینکه", "وقتی",
        "سپس", "چنین", "بدون", "درباره", "مانند", "طبق", "علیه", "پیش",
    };
    return kList;
}

inline std::unordered_set<std::string> load_stoplist(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open stoplist: " + path);
    std::unordered_set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        out.insert(line);
    }
    return out;
}

// Splits on sentence-final marks {. ! ? ؟ ؛ newline}; segments are trimmed
// of surrounding spaces and empty ones dropped.
inline std::vector<std::string> split_sentences(std::string_view text) {
    std::u32string cps = uni::decode_all(text);
    std::vector<std::string> out;
    std::u32string cur;
    auto flush = [&] {
        std::size_t b = 0, e = cur.size();
        while (b < e && cur[b] == U' ') ++b;
        while (e > b && cur[e - 1] == U' ') --e;
        if (e > b) out.push_back(uni::encode_all(cur.substr(b, e - b)));
        cur.clear();
    };
    for (char32_t cp : cps) {
        if (cp == U'.' || cp == U'!' || cp == U'?' || cp == U'؟' ||
            cp == U'؛' || cp == U'\n') {
            flush();
        } else {
            cur.push_back(cp);
        }
    }
    flush();
    return out;
}

// Space-separated tokens; ZWNJ is token-internal.
inline std::vector<std::string> tokenize(std::string_view sentence) {
    std::u32string cps = uni::decode_all(sentence);
    std::vector<std::string> out;
    std::u32string cur;
    for (char32_t cp : cps) {
        if (uni::is_space(cp)) {
            if (!cur.empty()) out.push_back(uni::encode_all(cur));
            cur.clear();
        } else {
            cur.push_back(cp);
        }
    }
    if (!cur.empty()) out.push_back(uni::encode_all(cur));
    return out;
}

inline std::vector<std::string> remove_stopwords(
    const std::vector<std::string>& tokens,
    const std::unordered_set<std::string>& stoplist) {
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens)
        if (!stoplist.count(t)) out.push_back(t);
    return out;
}

inline std::vector<std::string> tag_filter(const std::vector<std::string>& tokens,
                                           const TagAnnotation& ann,
                                           TagFilterMode mode) {
    if (mode == TagFilterMode::kPassthrough) return tokens;
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (const auto& t : tokens) {
        const Tag tag = ann.lookup(t);
        if (tag == Tag::kNoun || tag == Tag::kAdj) out.push_back(t);
    }
    return out;
}

inline bool is_numeric_token(const std::string& token) {
    if (token.empty()) return false;
    for (char c : token)
        if (c < '0' || c > '9') return false;
    return true;
}

inline TokenDoc make_token_doc(const RawPost& post, const NormalizerConfig& ncfg,
                               const TokenizerConfig& tcfg) {
    TokenDoc doc;
    doc.post_id = post.id;
    const CleanText clean = normalize_post(post, ncfg);
    for (const auto& sentence : split_sentences(clean.text))
        for (auto& tok : tokenize(sentence)) doc.tokens.push_back(std::move(tok));

    std::vector<std::string> kept = doc.tokens;
    if (tcfg.stopwords) {
        const auto& stoplist =
            tcfg.stoplist.empty() ? default_persian_stoplist() : tcfg.stoplist;
        kept = remove_stopwords(kept, stoplist);
    }
    kept = tag_filter(kept, tcfg.annotations, tcfg.tag_mode);
    if (!tcfg.keep_numbers) {
        std::vector<std::string> filtered;
        filtered.reserve(kept.size());
        for (auto& t : kept)
            if (!is_numeric_token(t)) filtered.push_back(std::move(t));
        kept = std::move(filtered);
    }
    doc.kept_tokens = std::move(kept);
    return doc;
}

// One TokenDoc per post, in corpus order.
inline std::vector<TokenDoc> build_token_docs(const Corpus& corpus,
                                              const NormalizerConfig& ncfg,
                                              const TokenizerConfig& tcfg) {
    std::vector<TokenDoc> docs;
    docs.reserve(corpus.size());
    for (const auto& post : corpus.posts())
        docs.push_back(make_token_doc(post, ncfg, tcfg));
    return docs;
}

inline void save_token_docs_jsonl(const std::vector<TokenDoc>& docs,
                                  std::ostream& out) {
    for (const auto& d : docs) {
        nlohmann::ordered_json j;
        j["post_id"] = d.post_id;
        j["tokens"] = d.tokens;
        j["kept_tokens"] = d.kept_tokens;
        out << j.dump() << "\n";
    }
}

inline void save_token_docs_jsonl(const std::vector<TokenDoc>& docs,
                                  const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write token docs: " + path);
    save_token_docs_jsonl(docs, out);
}

inline std::vector<TokenDoc> load_token_docs_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open token docs: " + path);
    std::vector<TokenDoc> docs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("post_id") ||
            !j.contains("tokens") || !j.contains("kept_tokens"))
            throw DataError("malformed token doc at line " + std::to_string(line_no));
        TokenDoc d;
        d.post_id = j.at("post_id").get<std::string>();
        d.tokens = j.at("tokens").get<std::vector<std::string>>();
        d.kept_tokens = j.at("kept_tokens").get<std::vector<std::string>>();
        docs.push_back(std::move(d));
    }
    return docs;
}

}  // namespace coocnet
