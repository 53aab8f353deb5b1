#pragma once

#include <cstdint>
#include <fstream>
#include <string>

#include <json.hpp>

#include "coocnet/errors.hpp"
#include "coocnet/normalize.hpp"
#include "coocnet/tokenize.hpp"
#include "coocnet/toml.hpp"

namespace coocnet {

// One config drives the whole pipeline; CLI flags override individual
// fields. Accepted as TOML (default) or JSON with the same section/key
// layout.
struct PipelineConfig {
    struct Input {
        std::string path;
        std::string format = "jsonl";  // jsonl | csv
        bool strict = false;
    } input;

    struct Normalize {
        bool emoji_punct = true;
        bool links_ids_hashtags = true;
        bool stopwords = true;    // applied at the token stage
        bool digits_fa_to_en = true;
        bool digit_letter_spacing = true;
        bool persian_charset_only = true;
        bool tag_filter = false;  // annotated mode; needs [tokenize].annotations
        bool hazm_normalize = true;
        std::string charset_extra;
        std::string unify_table;  // path override, empty = builtin table
        std::string affix_list;   // path override, empty = builtin list
    } normalize;

    struct Tokenize {
        std::string stoplist;     // path, empty = builtin Persian stoplist
        std::string annotations;  // token<TAB>TAG TSV
        bool keep_numbers = false;
    } tokenize;

    struct Cooc {
        std::string mode = "doc_binary";  // doc_binary | pair_min | pair_product
        std::int64_t min_df = 1;
    } cooc;

    struct Graph {
        double tau = 1.0;
        bool drop_isolated = true;
    } graph;

    struct Metrics {
        bool enabled = true;
        std::int64_t parallel = 1;
        std::int64_t powerlaw_k_min = 1;
    } metrics;

    struct Community {
        bool enabled = true;
        std::int64_t seed = 42;
        double resolution = 1.0;
        bool weighted = true;
        std::int64_t restarts = 16;
    } community;

    struct Keywords {
        std::int64_t top = 10;
        std::int64_t per_community = 5;
    } keywords;

    struct Export {
        bool graphml = true;
        bool gexf = true;
    } exports;
};

namespace detail {

template <typename T>
T get_as(const toml::Value& v, const std::string& where);

template <>
inline std::string get_as<std::string>(const toml::Value& v, const std::string& where) {
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    throw UsageError("config: " + where + " must be a string");
}

template <>
inline bool get_as<bool>(const toml::Value& v, const std::string& where) {
    if (const auto* b = std::get_if<bool>(&v)) return *b;
    throw UsageError("config: " + where + " must be a boolean");
}

template <>
inline std::int64_t get_as<std::int64_t>(const toml::Value& v, const std::string& where) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
    throw UsageError("config: " + where + " must be an integer");
}

template <>
inline double get_as<double>(const toml::Value& v, const std::string& where) {
    if (const auto* d = std::get_if<double>(&v)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
    throw UsageError("config: " + where + " must be a number");
}

inline void apply_entry(PipelineConfig& cfg, const std::string& section,
                        const std::string& key, const toml::Value& value) {
    const std::string where = section.empty() ? key : section + "." + key;
    auto str = [&] { return get_as<std::string>(value, where); };
    auto flag = [&] { return get_as<bool>(value, where); };
    auto num = [&] { return get_as<std::int64_t>(value, where); };
    auto real = [&] { return get_as<double>(value, where); };

    if (section == "input") {
        if (key == "path") cfg.input.path = str();
        else if (key == "format") cfg.input.format = str();
        else if (key == "strict") cfg.input.strict = flag();
        else throw UsageError("config: unknown key " + where);
    } else if (section == "normalize") {
        auto& n = cfg.normalize;
        if (key == "emoji_punct") n.emoji_punct = flag();
        else if (key == "links_ids_hashtags") n.links_ids_hashtags = flag();
        else if (key == "stopwords") n.stopwords = flag();
        else if (key == "digits_fa_to_en") n.digits_fa_to_en = flag();
        else if (key == "digit_letter_spacing") n.digit_letter_spacing = flag();
        else if (key == "persian_charset_only") n.persian_charset_only = flag();
        else if (key == "tag_filter") n.tag_filter = flag();
        else if (key == "hazm_normalize") n.hazm_normalize = flag();
        else if (key == "charset_extra") n.charset_extra = str();
        else if (key == "unify_table") n.unify_table = str();
        else if (key == "affix_list") n.affix_list = str();
        else throw UsageError("config: unknown key " + where);
    } else if (section == "tokenize") {
        if (key == "stoplist") cfg.tokenize.stoplist = str();
        else if (key == "annotations") cfg.tokenize.annotations = str();
        else if (key == "keep_numbers") cfg.tokenize.keep_numbers = flag();
        else throw UsageError("config: unknown key " + where);
    } else if (section == "cooc") {
        if (key == "mode") cfg.cooc.mode = str();
        else if (key == "min_df") cfg.cooc.min_df = num();
        else throw UsageError("config: unknown key " + where);
    } else if (section == "graph") {
        if (key == "tau") cfg.graph.tau = real();
        else if (key == "drop_isolated") cfg.graph.drop_isolated = flag();
        else throw UsageError("config: unknown key " + where);
    } else if (section == "metrics") {
        if (key == "enabled") cfg.metrics.enabled = flag();
        else if (key == "parallel") cfg.metrics.parallel = num();
        else if (key == "powerlaw_k_min") cfg.metrics.powerlaw_k_min = num();
        else throw UsageError("config: unknown key " + where);
    } else if (section == "community") {
        if (key == "enabled") cfg.community.enabled = flag();
        else if (key == "seed") cfg.community.seed = num();
        else if (key == "resolution") cfg.community.resolution = real();
        else if (key == "weighted") cfg.community.weighted = flag();
        else if (key == "restarts") cfg.community.restarts = num();
        else throw UsageError("config: unknown key " + where);
    } else if (section == "keywords") {
        if (key == "top") cfg.keywords.top = num();
        else if (key == "per_community") cfg.keywords.per_community = num();
        else throw UsageError("config: unknown key " + where);
    } else if (section == "export") {
        if (key == "graphml") cfg.exports.graphml = flag();
        else if (key == "gexf") cfg.exports.gexf = flag();
        else throw UsageError("config: unknown key " + where);
    } else {
        throw UsageError("config: unknown section [" + section + "]");
    }
}

}  // namespace detail

inline PipelineConfig config_from_toml(const toml::Table& table) {
    PipelineConfig cfg;
    for (const auto& [section, entries] : table)
        for (const auto& [key, value] : entries)
            detail::apply_entry(cfg, section, key, value);
    return cfg;
}

inline PipelineConfig config_from_json(const nlohmann::json& j) {
    PipelineConfig cfg;
    if (!j.is_object()) throw UsageError("config JSON must be an object");
    for (const auto& [section, entries] : j.items()) {
        if (!entries.is_object())
            throw UsageError("config JSON section '" + section + "' must be an object");
        for (const auto& [key, value] : entries.items()) {
            toml::Value v;
            if (value.is_string()) v = value.get<std::string>();
            else if (value.is_boolean()) v = value.get<bool>();
            else if (value.is_number_integer()) v = value.get<std::int64_t>();
            else if (value.is_number_float()) v = value.get<double>();
            else
                throw UsageError("config JSON: unsupported value type at " + section +
                                 "." + key);
            detail::apply_entry(cfg, section, key, v);
        }
    }
    return cfg;
}

inline PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
        if (j.is_discarded()) throw UsageError("config JSON is not valid JSON: " + path);
        return config_from_json(j);
    }
    return config_from_toml(toml::parse(in));
}

// Sorted-key echo of the effective config; lands in the report and feeds
// the provenance hash.
inline nlohmann::json config_echo(const PipelineConfig& cfg) {
    nlohmann::json j;
    j["input"] = {{"path", cfg.input.path},
                  {"format", cfg.input.format},
                  {"strict", cfg.input.strict}};
    j["normalize"] = {{"emoji_punct", cfg.normalize.emoji_punct},
                      {"links_ids_hashtags", cfg.normalize.links_ids_hashtags},
                      {"stopwords", cfg.normalize.stopwords},
                      {"digits_fa_to_en", cfg.normalize.digits_fa_to_en},
                      {"digit_letter_spacing", cfg.normalize.digit_letter_spacing},
                      {"persian_charset_only", cfg.normalize.persian_charset_only},
                      {"tag_filter", cfg.normalize.tag_filter},
                      {"hazm_normalize", cfg.normalize.hazm_normalize},
                      {"charset_extra", cfg.normalize.charset_extra},
                      {"unify_table", cfg.normalize.unify_table},
                      {"affix_list", cfg.normalize.affix_list}};
    j["tokenize"] = {{"stoplist", cfg.tokenize.stoplist},
                     {"annotations", cfg.tokenize.annotations},
                     {"keep_numbers", cfg.tokenize.keep_numbers}};
    j["cooc"] = {{"mode", cfg.cooc.mode}, {"min_df", cfg.cooc.min_df}};
    j["graph"] = {{"tau", cfg.graph.tau}, {"drop_isolated", cfg.graph.drop_isolated}};
    j["metrics"] = {{"enabled", cfg.metrics.enabled},
                    {"parallel", cfg.metrics.parallel},
                    {"powerlaw_k_min", cfg.metrics.powerlaw_k_min}};
    j["community"] = {{"enabled", cfg.community.enabled},
                      {"seed", cfg.community.seed},
                      {"resolution", cfg.community.resolution},
                      {"weighted", cfg.community.weighted},
                      {"restarts", cfg.community.restarts}};
    j["keywords"] = {{"top", cfg.keywords.top},
                     {"per_community", cfg.keywords.per_community}};
    j["export"] = {{"graphml", cfg.exports.graphml}, {"gexf", cfg.exports.gexf}};
    return j;
}

inline std::string config_hash(const PipelineConfig& cfg) {
    const std::string dump = config_echo(cfg).dump();
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (unsigned char c : dump) {
        h ^= c;
        h *= 0x100000001B3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

// Materialize the runtime structs (loads any override tables from disk).
inline NormalizerConfig make_normalizer_config(const PipelineConfig& cfg) {
    NormalizerConfig n;
    n.emoji_punct = cfg.normalize.emoji_punct;
    n.links_ids_hashtags = cfg.normalize.links_ids_hashtags;
    n.digits_fa_to_en = cfg.normalize.digits_fa_to_en;
    n.digit_letter_spacing = cfg.normalize.digit_letter_spacing;
    n.persian_charset_only = cfg.normalize.persian_charset_only;
    n.hazm_normalize = cfg.normalize.hazm_normalize;
    n.set_charset_extra(cfg.normalize.charset_extra);
    if (!cfg.normalize.unify_table.empty()) n.tables.load_unify(cfg.normalize.unify_table);
    if (!cfg.normalize.affix_list.empty()) n.tables.load_affixes(cfg.normalize.affix_list);
    return n;
}

inline TokenizerConfig make_tokenizer_config(const PipelineConfig& cfg) {
    TokenizerConfig t;
    t.stopwords = cfg.normalize.stopwords;
    if (!cfg.tokenize.stoplist.empty()) t.stoplist = load_stoplist(cfg.tokenize.stoplist);
    if (cfg.normalize.tag_filter) {
        if (cfg.tokenize.annotations.empty())
            throw UsageError(
                "tag_filter is enabled but [tokenize].annotations is not set");
        t.tag_mode = TagFilterMode::kAnnotated;
        t.annotations = TagAnnotation::load(cfg.tokenize.annotations);
    }
    t.keep_numbers = cfg.tokenize.keep_numbers;
    return t;
}

}  // namespace coocnet
