#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "coocnet/community.hpp"
#include "coocnet/config.hpp"
#include "coocnet/cooc.hpp"
#include "coocnet/corpus.hpp"
#include "coocnet/export.hpp"
#include "coocnet/graph.hpp"
#include "coocnet/keywords.hpp"
#include "coocnet/log.hpp"
#include "coocnet/metrics.hpp"
#include "coocnet/tokenize.hpp"

namespace coocnet::pipeline {

// "matrix.csv" + ".vocab.csv" -> "matrix.vocab.csv"; the extension of
// `path` is replaced by `suffix`.
inline std::string sibling_path(const std::string& path, const std::string& suffix) {
    const auto dot = path.rfind('.');
    const auto slash = path.find_last_of("/\\");
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + suffix;
    return path.substr(0, dot) + suffix;
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw DataError("not valid JSON: " + path);
    return j;
}

inline Corpus run_ingest(const PipelineConfig& cfg, const std::string& out_path) {
    if (cfg.input.path.empty()) throw UsageError("no input corpus path configured");
    CorpusFormat format;
    if (cfg.input.format == "jsonl") format = CorpusFormat::kJsonl;
    else if (cfg.input.format == "csv") format = CorpusFormat::kCsv;
    else throw UsageError("unknown corpus format: " + cfg.input.format);
    LoadReport report;
    Corpus corpus = load_corpus(cfg.input.path, format, cfg.input.strict, &report);
    if (report.duplicates_skipped)
        log::warn(std::to_string(report.duplicates_skipped) +
                  " duplicate post id(s) collapsed to first occurrence");
    save_corpus_jsonl(corpus, out_path);
    log::info("ingest: " + std::to_string(corpus.size()) + " posts -> " + out_path);
    return corpus;
}

inline std::vector<TokenDoc> run_normalize(const PipelineConfig& cfg,
                                           const std::string& corpus_ckpt,
                                           const std::string& out_path) {
    const Corpus corpus = load_corpus(corpus_ckpt, CorpusFormat::kJsonl, true);
    const NormalizerConfig ncfg = make_normalizer_config(cfg);
    const TokenizerConfig tcfg = make_tokenizer_config(cfg);
    std::vector<TokenDoc> docs = build_token_docs(corpus, ncfg, tcfg);
    save_token_docs_jsonl(docs, out_path);
    log::info("normalize: " + std::to_string(docs.size()) + " docs -> " + out_path);
    return docs;
}

inline void run_cooc(const PipelineConfig& cfg, const std::string& docs_ckpt,
                     const std::string& out_csv) {
    const std::vector<TokenDoc> docs = load_token_docs_jsonl(docs_ckpt);
    const auto mode = cooc_mode_from_string(cfg.cooc.mode);
    if (!mode) throw UsageError("unknown cooc mode: " + cfg.cooc.mode);
    if (cfg.cooc.min_df < 1) throw UsageError("min_df must be >= 1");
    const Vocabulary vocab =
        build_vocab(docs, static_cast<std::size_t>(cfg.cooc.min_df));
    const CoocMatrix matrix =
        build_cooc(docs, vocab, *mode, /*skip_missing=*/cfg.cooc.min_df > 1);
    matrix_to_csv(matrix, vocab, out_csv);
    save_vocab_csv(vocab, sibling_path(out_csv, ".vocab.csv"));
    log::info("cooc: V=" + std::to_string(vocab.size()) +
              " nnz=" + std::to_string(matrix.nnz()) + " -> " + out_csv);
}

inline CoGraph run_graph(const PipelineConfig& cfg, const std::string& matrix_csv,
                         const std::string& out_ckpt) {
    const Vocabulary vocab = load_vocab_csv(sibling_path(matrix_csv, ".vocab.csv"));
    const auto mode = cooc_mode_from_string(cfg.cooc.mode);
    const CoocMatrix matrix =
        matrix_from_csv(matrix_csv, vocab, mode.value_or(CoocMode::kDocBinary));
    CoGraph g = from_matrix(matrix, vocab, cfg.graph.tau, cfg.graph.drop_isolated);
    save_graph_jsonl(g, out_ckpt);
    log::info("graph: n=" + std::to_string(g.n()) + " m=" + std::to_string(g.m()) +
              " -> " + out_ckpt);
    return g;
}

inline nlohmann::json metrics_to_json(const CoGraph& g, const GraphStats& stats,
                                      const CentralityVector& close,
                                      const CentralityVector& close_raw,
                                      const CentralityVector& between) {
    nlohmann::json j;
    j["n"] = stats.n;
    j["m"] = stats.m;
    j["component_count"] = stats.component_count;
    j["largest_component_size"] = stats.largest_component_size;
    if (stats.diameter) j["diameter"] = *stats.diameter;
    else j["diameter"] = nullptr;
    j["avg_degree_2m_over_n"] = stats.avg_degree_2m_over_n;
    j["avg_degree_m_over_n"] = stats.avg_degree_m_over_n;
    if (stats.avg_path_length) j["avg_path_length"] = *stats.avg_path_length;
    else j["avg_path_length"] = nullptr;
    if (stats.powerlaw) {
        j["powerlaw_exponent"] = stats.powerlaw->exponent;
        j["powerlaw_r2"] = stats.powerlaw->r_squared;
    } else {
        j["powerlaw_exponent"] = nullptr;
        j["powerlaw_r2"] = nullptr;
    }
    auto& hist = j["degree_histogram"] = nlohmann::json::array();
    for (const auto& [k, count] : stats.degree_histogram)
        hist.push_back({k, count});
    auto vector_json = [&](const CentralityVector& cv) {
        nlohmann::json m = nlohmann::json::object();
        for (NodeId v = 0; v < g.n(); ++v) m[g.label(v)] = cv.values[v];
        return m;
    };
    j["closeness"] = vector_json(close);
    j["closeness_raw"] = vector_json(close_raw);
    j["betweenness"] = vector_json(between);
    return j;
}

inline void run_metrics(const PipelineConfig& cfg, const std::string& graph_ckpt,
                        const std::string& out_json) {
    const CoGraph g = load_graph_jsonl(graph_ckpt);
    const GraphStats stats = compute_graph_stats(g, cfg.metrics.powerlaw_k_min);
    const CentralityVector close = closeness(g, /*wf_scaled=*/true);
    const CentralityVector close_raw = closeness(g, /*wf_scaled=*/false);
    const unsigned workers =
        cfg.metrics.parallel < 1 ? 1u : static_cast<unsigned>(cfg.metrics.parallel);
    const CentralityVector between = betweenness(g, /*normalized=*/true, workers);

    write_file(out_json,
               metrics_to_json(g, stats, close, close_raw, between).dump(2) + "\n");
    {
        std::ostringstream ss;
        save_centrality_csv(g, close, ss);
        write_file(sibling_path(out_json, ".closeness.csv"), ss.str());
    }
    {
        std::ostringstream ss;
        save_centrality_csv(g, between, ss);
        write_file(sibling_path(out_json, ".betweenness.csv"), ss.str());
    }
    log::info("metrics -> " + out_json);
}

// Rebuild a node-indexed centrality vector from a metrics.json word map.
inline CentralityVector centrality_from_metrics_json(const nlohmann::json& metrics,
                                                     const std::string& key,
                                                     const CoGraph& g) {
    if (!metrics.contains(key))
        throw DataError("metrics JSON lacks '" + key + "' vector");
    const auto& m = metrics.at(key);
    CentralityVector cv{key == "betweenness" ? CentralityVector::Kind::kBetweenness
                                             : CentralityVector::Kind::kCloseness,
                        true,
                        {}};
    cv.values.assign(g.n(), 0.0);
    for (NodeId v = 0; v < g.n(); ++v) {
        const auto it = m.find(g.label(v));
        if (it != m.end()) cv.values[v] = it->get<double>();
    }
    return cv;
}

inline std::optional<Partition> run_communities(const PipelineConfig& cfg,
                                                const std::string& graph_ckpt,
                                                const std::string& metrics_json,
                                                const std::string& out_csv) {
    const CoGraph g = load_graph_jsonl(graph_ckpt);
    if (g.m() == 0) {
        log::warn("communities: graph has no edges, nothing to detect");
        return std::nullopt;
    }
    const Partition part =
        louvain(g, static_cast<std::uint64_t>(cfg.community.seed),
                cfg.community.resolution, cfg.community.weighted,
                cfg.community.restarts < 1
                    ? 1u
                    : static_cast<unsigned>(cfg.community.restarts));
    {
        std::ostringstream ss;
        save_partition_csv(g, part, ss);
        write_file(out_csv, ss.str());
    }

    nlohmann::json summary;
    summary["community_count"] = part.community_count;
    summary["modularity"] = part.q;
    summary["resolution"] = cfg.community.resolution;
    summary["seed"] = cfg.community.seed;
    summary["weighted"] = cfg.community.weighted;
    auto& arr = summary["communities"] = nlohmann::json::array();
    std::vector<std::size_t> sizes(part.community_count, 0);
    for (NodeId v = 0; v < g.n(); ++v) ++sizes[part.assignment[v]];
    std::vector<std::vector<std::pair<std::string, double>>> kw;
    if (!metrics_json.empty()) {
        const auto metrics = load_json_file(metrics_json);
        const auto cv = centrality_from_metrics_json(metrics, "closeness", g);
        kw = community_keywords(
            g, part, cv,
            static_cast<std::size_t>(std::max<std::int64_t>(1, cfg.keywords.per_community)));
    }
    for (std::uint32_t c = 0; c < part.community_count; ++c) {
        nlohmann::json jc;
        jc["id"] = c;
        jc["size"] = sizes[c];
        auto& words = jc["keywords"] = nlohmann::json::array();
        if (!kw.empty())
            for (const auto& [word, value] : kw[c])
                words.push_back({{"word", word}, {"value", value}});
        arr.push_back(jc);
    }
    write_file(sibling_path(out_csv, ".summary.json"), summary.dump(2) + "\n");
    log::info("communities: " + std::to_string(part.community_count) +
              " communities, Q=" + format_double(part.q) + " -> " + out_csv);
    return part;
}

inline KeywordTable run_keywords(const PipelineConfig& cfg,
                                 const std::string& metrics_json,
                                 const std::string& metric,
                                 const std::string& out_md) {
    if (metric != "closeness" && metric != "betweenness")
        throw UsageError("metric must be closeness or betweenness");
    if (cfg.keywords.top < 1) throw UsageError("top-k must be >= 1");
    const auto metrics = load_json_file(metrics_json);
    if (!metrics.contains(metric))
        throw DataError("metrics JSON lacks '" + metric + "' vector");
    std::vector<std::pair<std::string, double>> scores;
    for (const auto& [word, value] : metrics.at(metric).items())
        scores.emplace_back(word, value.get<double>());
    KeywordTable table =
        top_keywords(scores, metric, static_cast<std::size_t>(cfg.keywords.top));
    table.provenance = config_hash(cfg);
    write_file(out_md, keyword_table_markdown(table));
    write_file(sibling_path(out_md, ".csv"), keyword_table_csv(table));
    log::info("keywords(" + metric + ") -> " + out_md);
    return table;
}

inline void run_export(const PipelineConfig&, const std::string& graph_ckpt,
                       const std::string& partition_csv,
                       const std::string& metrics_json,
                       const std::string& graphml_path,
                       const std::string& gexf_path) {
    const CoGraph g = load_graph_jsonl(graph_ckpt);
    std::optional<Partition> part;
    if (!partition_csv.empty()) {
        // partition.csv is word,community_id; map back through labels
        std::ifstream in(partition_csv, std::ios::binary);
        if (!in) throw IoError("cannot open partition CSV: " + partition_csv);
        std::size_t line_no = 0;
        auto header = csv::read_record(in, line_no);
        if (!header || *header != std::vector<std::string>{"word", "community_id"})
            throw DataError("partition CSV header must be word,community_id");
        std::unordered_map<std::string, std::uint32_t> by_word;
        std::uint32_t max_c = 0;
        while (auto rec = csv::read_record(in, line_no)) {
            if (rec->size() == 1 && (*rec)[0].empty()) continue;
            if (rec->size() != 2)
                throw DataError("partition CSV line " + std::to_string(line_no));
            const auto c = static_cast<std::uint32_t>(std::stoul((*rec)[1]));
            by_word[(*rec)[0]] = c;
            max_c = std::max(max_c, c);
        }
        Partition p;
        p.assignment.assign(g.n(), 0);
        for (NodeId v = 0; v < g.n(); ++v) {
            auto it = by_word.find(g.label(v));
            if (it == by_word.end())
                throw DataError("partition CSV misses word: " + g.label(v));
            p.assignment[v] = it->second;
        }
        p.community_count = max_c + 1;
        part = std::move(p);
    }
    std::vector<CentralityVector> cvs;
    if (!metrics_json.empty()) {
        const auto metrics = load_json_file(metrics_json);
        cvs.push_back(centrality_from_metrics_json(metrics, "closeness", g));
        cvs.push_back(centrality_from_metrics_json(metrics, "betweenness", g));
    }
    if (!graphml_path.empty())
        export_graphml(g, part ? &*part : nullptr, cvs, graphml_path);
    if (!gexf_path.empty()) export_gexf(g, part ? &*part : nullptr, cvs, gexf_path);
    log::info("export done");
}

inline nlohmann::json corpus_stats_json(const Corpus& corpus) {
    nlohmann::json j;
    j["total_posts"] = corpus.size();
    auto& channels = j["channels"] = nlohmann::json::object();
    for (const auto& [channel, stats] : corpus.source_meta()) {
        channels[channel] = {{"post_count", stats.post_count},
                             {"word_count", stats.word_count},
                             {"avg_words_per_post", stats.avg_words_per_post()}};
    }
    return j;
}

// Runs every stage into `out_dir` with fixed artifact names, then writes
// report.json / report.md. Staged CLI runs over the same config produce
// byte-identical files.
inline void run_report(const PipelineConfig& cfg, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create report directory: " + out_dir);
    auto at = [&](const std::string& name) { return (fs::path(out_dir) / name).string(); };

    const Corpus corpus = run_ingest(cfg, at("corpus.ckpt"));
    run_normalize(cfg, at("corpus.ckpt"), at("docs.ckpt"));
    run_cooc(cfg, at("docs.ckpt"), at("matrix.csv"));
    const CoGraph g = run_graph(cfg, at("matrix.csv"), at("graph.ckpt"));

    std::vector<std::string> manifest = {"corpus.ckpt", "docs.ckpt", "matrix.csv",
                                         "matrix.vocab.csv", "graph.ckpt"};

    nlohmann::json report;
    report["config"] = config_echo(cfg);
    report["config_hash"] = config_hash(cfg);
    report["corpus"] = corpus_stats_json(corpus);

    std::optional<KeywordTable> close_table;
    std::optional<KeywordTable> between_table;
    if (cfg.metrics.enabled) {
        run_metrics(cfg, at("graph.ckpt"), at("metrics.json"));
        manifest.insert(manifest.end(),
                        {"metrics.json", "metrics.closeness.csv",
                         "metrics.betweenness.csv"});
        report["graph"] = load_json_file(at("metrics.json"));
        report["graph"].erase("closeness");
        report["graph"].erase("closeness_raw");
        report["graph"].erase("betweenness");
        close_table = run_keywords(cfg, at("metrics.json"), "closeness",
                                   at("keywords_closeness.md"));
        between_table = run_keywords(cfg, at("metrics.json"), "betweenness",
                                     at("keywords_betweenness.md"));
        manifest.insert(manifest.end(),
                        {"keywords_closeness.md", "keywords_closeness.csv",
                         "keywords_betweenness.md", "keywords_betweenness.csv"});
        auto table_json = [](const KeywordTable& t) {
            nlohmann::json rows = nlohmann::json::array();
            for (const auto& r : t.rows)
                rows.push_back({{"rank", r.rank}, {"word", r.word}, {"value", r.value}});
            return rows;
        };
        report["keywords"] = {{"closeness", table_json(*close_table)},
                              {"betweenness", table_json(*between_table)}};
    } else {
        report["graph"] = "skipped";
        report["keywords"] = "skipped";
    }

    std::optional<Partition> part;
    if (cfg.community.enabled) {
        part = run_communities(cfg, at("graph.ckpt"),
                               cfg.metrics.enabled ? at("metrics.json") : "",
                               at("partition.csv"));
        if (part) {
            manifest.insert(manifest.end(), {"partition.csv", "partition.summary.json"});
            report["communities"] = load_json_file(at("partition.summary.json"));
        } else {
            report["communities"] = "skipped";
        }
    } else {
        report["communities"] = "skipped";
    }

    if (cfg.exports.graphml || cfg.exports.gexf) {
        run_export(cfg, at("graph.ckpt"),
                   part ? at("partition.csv") : "",
                   cfg.metrics.enabled ? at("metrics.json") : "",
                   cfg.exports.graphml ? at("graph.graphml") : "",
                   cfg.exports.gexf ? at("graph.gexf") : "");
        if (cfg.exports.graphml) manifest.push_back("graph.graphml");
        if (cfg.exports.gexf) manifest.push_back("graph.gexf");
    }

    manifest.push_back("report.json");
    manifest.push_back("report.md");
    std::sort(manifest.begin(), manifest.end());
    report["manifest"] = manifest;
    write_file(at("report.json"), report.dump(2) + "\n");

    // Markdown report
    std::ostringstream md;
    md << "# Word Co-occurrence Network Report\n\n";
    md << "Config hash: `" << config_hash(cfg) << "`\n\n";
    md << "## Corpus\n\n";
    md << "| Channel | Posts | Words | Avg words/post |\n";
    md << "|---------|------:|------:|---------------:|\n";
    for (const auto& [channel, stats] : corpus.source_meta())
        md << "| " << channel << " | " << stats.post_count << " | "
           << stats.word_count << " | " << format_fixed4(stats.avg_words_per_post())
           << " |\n";
    md << "| (total) | " << corpus.size() << " | | |\n\n";

    md << "## Graph\n\n";
    if (cfg.metrics.enabled) {
        const auto& gj = report["graph"];
        auto num4 = [](const nlohmann::json& v) {
            return v.is_number() ? format_fixed4(v.get<double>()) : v.dump();
        };
        md << "- nodes: " << gj["n"] << "\n";
        md << "- edges: " << gj["m"] << "\n";
        md << "- connected components: " << gj["component_count"]
           << " (largest: " << gj["largest_component_size"] << ")\n";
        md << "- diameter (largest component): " << gj["diameter"] << "\n";
        md << "- average degree 2m/n: " << num4(gj["avg_degree_2m_over_n"]) << "\n";
        md << "- average degree m/n: " << num4(gj["avg_degree_m_over_n"]) << "\n";
        md << "- average path length (largest component): "
           << num4(gj["avg_path_length"]) << "\n";
        md << "- power-law exponent: " << num4(gj["powerlaw_exponent"])
           << " (r2 = " << num4(gj["powerlaw_r2"]) << ")\n\n";
        md << "## Top keywords (closeness centrality)\n\n"
           << keyword_table_markdown(*close_table) << "\n";
        md << "## Top keywords (betweenness centrality)\n\n"
           << keyword_table_markdown(*between_table) << "\n";
    } else {
        md << "metrics skipped by config\n\n";
    }

    md << "## Communities\n\n";
    if (part) {
        const auto& cj = report["communities"];
        md << "- communities: " << cj["community_count"] << "\n";
        md << "- modularity: " << format_fixed4(cj["modularity"].get<double>())
           << "\n\n";
        md << "| Community | Size | Top words |\n";
        md << "|----------:|-----:|-----------|\n";
        for (const auto& c : cj["communities"]) {
            md << "| " << c["id"] << " | " << c["size"] << " | ";
            bool first = true;
            for (const auto& w : c["keywords"]) {
                if (!first) md << ", ";
                md << w["word"].get<std::string>();
                first = false;
            }
            md << " |\n";
        }
    } else {
        md << "community detection skipped\n";
    }
    write_file(at("report.md"), md.str());
    log::info("report -> " + out_dir);
}

}  // namespace coocnet::pipeline
