#pragma once

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <json.hpp>

#include "coocnet/csv.hpp"
#include "coocnet/errors.hpp"
#include "coocnet/log.hpp"

namespace coocnet {

struct RawPost {
    std::string id;
    std::string channel;
    std::optional<std::string> timestamp;  // carried opaquely, never parsed
    std::string caption;

    friend bool operator==(const RawPost&, const RawPost&) = default;
};

struct ChannelStats {
    std::size_t post_count = 0;
    std::size_t word_count = 0;

    double avg_words_per_post() const {
        return post_count == 0 ? 0.0
                               : static_cast<double>(word_count) /
                                     static_cast<double>(post_count);
    }

    friend bool operator==(const ChannelStats&, const ChannelStats&) = default;
};

enum class CorpusFormat { kJsonl, kCsv };

struct LoadReport {
    std::size_t duplicates_skipped = 0;
    std::size_t malformed_skipped = 0;
};

inline std::size_t whitespace_word_count(const std::string& text) {
    std::size_t count = 0;
    bool in_word = false;
    for (char c : text) {
        const bool ws = c == ' ' || c == '\t' || c == '\n' || c == '\r' ||
                        c == '\f' || c == '\v';
        if (!ws && !in_word) ++count;
        in_word = !ws;
    }
    return count;
}

class Corpus {
  public:
    Corpus() = default;

    // Appends a post; returns false (and counts a duplicate) when the id was
    // already present. Keep-first policy.
    bool add(RawPost post) {
        if (!seen_ids_.insert(post.id).second) return false;
        auto& stats = source_meta_[post.channel];
        ++stats.post_count;
        stats.word_count += whitespace_word_count(post.caption);
        posts_.push_back(std::move(post));
        return true;
    }

    const std::vector<RawPost>& posts() const { return posts_; }
    const std::map<std::string, ChannelStats>& source_meta() const {
        return source_meta_;
    }

    std::size_t size() const { return posts_.size(); }

    friend bool operator==(const Corpus& a, const Corpus& b) {
        return a.posts_ == b.posts_ && a.source_meta_ == b.source_meta_;
    }

  private:
    std::vector<RawPost> posts_;
    std::map<std::string, ChannelStats> source_meta_;
    std::unordered_set<std::string> seen_ids_;
};

// Per-channel post/word counts; avg_words_per_post derives from them.
inline const std::map<std::string, ChannelStats>& corpus_stats(const Corpus& c) {
    return c.source_meta();
}

namespace detail {

inline RawPost post_from_json(const nlohmann::json& j, std::size_t line_no) {
    if (!j.is_object()) throw DataError("record is not a JSON object");
    static const std::unordered_set<std::string> kKeys = {"id", "channel",
                                                          "timestamp", "caption"};
    for (const auto& [key, _] : j.items()) {
        if (!kKeys.count(key))
            throw DataError("unexpected key '" + key + "' at line " +
                            std::to_string(line_no));
    }
    for (const auto& key : kKeys) {
        if (!j.contains(key))
            throw DataError("missing key '" + key + "' at line " +
                            std::to_string(line_no));
    }
    RawPost p;
    if (!j.at("id").is_string() || j.at("id").get<std::string>().empty())
        throw DataError("id must be a non-empty string at line " +
                        std::to_string(line_no));
    p.id = j.at("id").get<std::string>();
    if (!j.at("channel").is_string())
        throw DataError("channel must be a string at line " + std::to_string(line_no));
    p.channel = j.at("channel").get<std::string>();
    const auto& ts = j.at("timestamp");
    if (ts.is_null()) {
        p.timestamp = std::nullopt;
    } else if (ts.is_string()) {
        p.timestamp = ts.get<std::string>();
    } else {
        throw DataError("timestamp must be a string or null at line " +
                        std::to_string(line_no));
    }
    if (!j.at("caption").is_string())
        throw DataError("caption must be a string at line " + std::to_string(line_no));
    p.caption = j.at("caption").get<std::string>();
    return p;
}

}  // namespace detail

// Reads already-crawled post records. Lenient mode skips malformed records
// with a warning; strict mode throws DataError on the first one. Duplicate
// ids always collapse to the first occurrence.
inline Corpus load_corpus(const std::string& path, CorpusFormat format,
                          bool strict = false, LoadReport* report = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus file: " + path);
    Corpus corpus;
    LoadReport local;
    auto note_malformed = [&](std::size_t line_no, const std::string& what) {
        if (strict)
            throw DataError("malformed record at line " + std::to_string(line_no) +
                            ": " + what);
        ++local.malformed_skipped;
        log::warn("skipping malformed record at line " + std::to_string(line_no) +
                  ": " + what);
    };
    auto note_duplicate = [&](const std::string& id) {
        ++local.duplicates_skipped;
        log::warn("duplicate post id '" + id + "' ignored (keep-first)");
    };

    if (format == CorpusFormat::kJsonl) {
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded()) {
                note_malformed(line_no, "invalid JSON");
                continue;
            }
            try {
                RawPost p = detail::post_from_json(j, line_no);
                if (!corpus.add(std::move(p))) note_duplicate(j.at("id"));
            } catch (const DataError& e) {
                note_malformed(line_no, e.what());
            }
        }
    } else {
        std::size_t line_no = 0;
        auto header = csv::read_record(in, line_no);
        if (!header || *header != std::vector<std::string>{"id", "channel",
                                                           "timestamp", "caption"})
            throw DataError("CSV header must be exactly id,channel,timestamp,caption");
        while (auto rec = csv::read_record(in, line_no)) {
            if (rec->size() == 1 && (*rec)[0].empty()) continue;  // blank line
            if (rec->size() != 4) {
                note_malformed(line_no, "expected 4 fields, got " +
                                            std::to_string(rec->size()));
                continue;
            }
            if ((*rec)[0].empty()) {
                note_malformed(line_no, "empty id");
                continue;
            }
            RawPost p;
            p.id = (*rec)[0];
            p.channel = (*rec)[1];
            p.timestamp = (*rec)[2].empty() ? std::nullopt
                                            : std::make_optional((*rec)[2]);
            p.caption = (*rec)[3];
            if (!corpus.add(std::move(p))) note_duplicate((*rec)[0]);
        }
    }
    if (report) *report = local;
    return corpus;
}

// JSONL writer; load_corpus(save_corpus(c)) == c.
inline void save_corpus_jsonl(const Corpus& corpus, std::ostream& out) {
    for (const auto& p : corpus.posts()) {
        nlohmann::ordered_json j;
        j["id"] = p.id;
        j["channel"] = p.channel;
        if (p.timestamp) j["timestamp"] = *p.timestamp;
        else j["timestamp"] = nullptr;
        j["caption"] = p.caption;
        out << j.dump() << "\n";
    }
}

inline void save_corpus_jsonl(const Corpus& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write corpus file: " + path);
    save_corpus_jsonl(corpus, out);
}

}  // namespace coocnet
