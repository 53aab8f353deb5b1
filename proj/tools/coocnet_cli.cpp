// coocnet: corpus-to-graph analytics pipeline driver.
//
// Stages read the previous stage's artifact, so any prefix of the pipeline
// can be rerun; `report` runs everything into one directory.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "coocnet/config.hpp"
#include "coocnet/errors.hpp"
#include "coocnet/log.hpp"
#include "coocnet/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitIo = 3;

struct CliState {
    std::string config_path;
    coocnet::PipelineConfig cfg;

    void load_config_if_set() {
        if (!config_path.empty()) cfg = coocnet::load_config(config_path);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"word co-occurrence network analytics pipeline"};
    app.require_subcommand(1);
    app.fallthrough(false);

    CliState st;

    // ingest
    std::string ingest_path, ingest_format = "jsonl", ingest_out = "corpus.ckpt";
    bool ingest_strict = false;
    auto* ingest = app.add_subcommand("ingest", "load a crawled corpus into a checkpoint");
    ingest->add_option("path", ingest_path, "input JSONL/CSV file")->required();
    ingest->add_option("--format", ingest_format, "jsonl or csv");
    ingest->add_option("--out", ingest_out, "corpus checkpoint path");
    ingest->add_flag("--strict", ingest_strict, "abort on malformed records");
    ingest->add_option("--config", st.config_path, "pipeline config (TOML/JSON)");

    // normalize
    std::string norm_in = "corpus.ckpt", norm_out = "docs.ckpt";
    auto* normalize = app.add_subcommand("normalize", "normalize and tokenize captions");
    normalize->add_option("--in", norm_in, "corpus checkpoint");
    normalize->add_option("--out", norm_out, "token docs checkpoint");
    normalize->add_option("--config", st.config_path, "pipeline config (TOML/JSON)");

    // cooc
    std::string cooc_in = "docs.ckpt", cooc_out = "matrix.csv", cooc_mode;
    std::int64_t cooc_min_df = -1;
    auto* cooc = app.add_subcommand("cooc", "build the co-occurrence matrix");
    cooc->add_option("--in", cooc_in, "token docs checkpoint");
    cooc->add_option("--mode", cooc_mode, "doc_binary|pair_min|pair_product");
    cooc->add_option("--min-df", cooc_min_df, "minimum document frequency");
    cooc->add_option("--out", cooc_out, "matrix CSV (vocab sidecar written next to it)");
    cooc->add_option("--config", st.config_path, "pipeline config (TOML/JSON)");

    // graph
    std::string graph_in = "matrix.csv", graph_out = "graph.ckpt";
    double graph_tau = -1.0;
    bool graph_drop = true;
    auto* graph = app.add_subcommand("graph", "materialize the co-occurrence graph");
    graph->add_option("--in", graph_in, "matrix CSV");
    graph->add_option("--tau", graph_tau, "minimum edge weight (>= 1)");
    auto* graph_drop_opt = graph->add_flag("--drop-isolated,!--keep-isolated",
                                           graph_drop, "drop degree-0 nodes (default on)");
    graph->add_option("--out", graph_out, "graph checkpoint");
    graph->add_option("--config", st.config_path, "pipeline config (TOML/JSON)");

    // metrics
    std::string metrics_in = "graph.ckpt", metrics_out = "metrics.json";
    std::int64_t metrics_parallel = -1;
    auto* metrics = app.add_subcommand("metrics", "centralities and graph statistics");
    metrics->add_option("--in", metrics_in, "graph checkpoint");
    metrics->add_option("--out", metrics_out, "metrics JSON (centrality CSVs beside it)");
    metrics->add_option("--parallel", metrics_parallel, "betweenness worker threads");
    metrics->add_option("--config", st.config_path, "pipeline config (TOML/JSON)");

    // communities
    std::string comm_in = "graph.ckpt", comm_out = "partition.csv", comm_metrics;
    std::int64_t comm_seed = -1, comm_restarts = -1;
    double comm_resolution = -1.0;
    auto* communities = app.add_subcommand("communities", "Louvain community detection");
    communities->add_option("--in", comm_in, "graph checkpoint");
    communities->add_option("--seed", comm_seed, "shuffle seed (default 42)");
    communities->add_option("--resolution", comm_resolution, "resolution (default 1.0)");
    communities->add_option("--restarts", comm_restarts, "sub-seeded restarts (default 16)");
    communities->add_option("--metrics", comm_metrics,
                            "metrics JSON for per-community keywords");
    communities->add_option("--out", comm_out, "partition CSV (summary JSON beside it)");
    communities->add_option("--config", st.config_path, "pipeline config (TOML/JSON)");

    // keywords
    std::string kw_in = "metrics.json", kw_out = "table.md", kw_metric = "closeness";
    std::int64_t kw_top = -1;
    auto* keywords = app.add_subcommand("keywords", "ranked keyword table");
    keywords->add_option("--in", kw_in, "metrics JSON");
    keywords->add_option("--metric", kw_metric, "closeness or betweenness");
    keywords->add_option("--top", kw_top, "table length (default 10)");
    keywords->add_option("--out", kw_out, "markdown table (CSV twin beside it)");
    keywords->add_option("--config", st.config_path, "pipeline config (TOML/JSON)");

    // export
    std::string exp_in = "graph.ckpt", exp_partition, exp_metrics, exp_graphml, exp_gexf;
    auto* exports = app.add_subcommand("export", "GraphML/GEXF for external viewers");
    exports->add_option("--in", exp_in, "graph checkpoint");
    exports->add_option("--partition", exp_partition, "partition CSV to attach");
    exports->add_option("--metrics", exp_metrics, "metrics JSON to attach");
    exports->add_option("--graphml", exp_graphml, "GraphML output path");
    exports->add_option("--gexf", exp_gexf, "GEXF output path");
    exports->add_option("--config", st.config_path, "pipeline config (TOML/JSON)");

    // report
    std::string report_out = "report", report_in;
    auto* report = app.add_subcommand("report", "run the whole pipeline into a directory");
    report->add_option("--out", report_out, "output directory");
    report->add_option("--in", report_in, "input corpus path (overrides config)");
    report->add_option("--config", st.config_path, "pipeline config (TOML/JSON)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help() << "\n";
        return kExitUsage;
    }

    try {
        st.load_config_if_set();
        auto& cfg = st.cfg;
        if (ingest->parsed()) {
            cfg.input.path = ingest_path;
            if (ingest->count("--format")) cfg.input.format = ingest_format;
            if (ingest->count("--strict")) cfg.input.strict = true;
            coocnet::pipeline::run_ingest(cfg, ingest_out);
        } else if (normalize->parsed()) {
            coocnet::pipeline::run_normalize(cfg, norm_in, norm_out);
        } else if (cooc->parsed()) {
            if (cooc->count("--mode")) cfg.cooc.mode = cooc_mode;
            if (cooc->count("--min-df")) cfg.cooc.min_df = cooc_min_df;
            coocnet::pipeline::run_cooc(cfg, cooc_in, cooc_out);
        } else if (graph->parsed()) {
            if (graph->count("--tau")) cfg.graph.tau = graph_tau;
            if (graph_drop_opt->count()) cfg.graph.drop_isolated = graph_drop;
            coocnet::pipeline::run_graph(cfg, graph_in, graph_out);
        } else if (metrics->parsed()) {
            if (metrics->count("--parallel")) cfg.metrics.parallel = metrics_parallel;
            coocnet::pipeline::run_metrics(cfg, metrics_in, metrics_out);
        } else if (communities->parsed()) {
            if (communities->count("--seed")) cfg.community.seed = comm_seed;
            if (communities->count("--resolution"))
                cfg.community.resolution = comm_resolution;
            if (communities->count("--restarts")) cfg.community.restarts = comm_restarts;
            coocnet::pipeline::run_communities(cfg, comm_in, comm_metrics, comm_out);
        } else if (keywords->parsed()) {
            if (keywords->count("--top")) cfg.keywords.top = kw_top;
            coocnet::pipeline::run_keywords(cfg, kw_in, kw_metric, kw_out);
        } else if (exports->parsed()) {
            if (exp_graphml.empty() && exp_gexf.empty())
                throw coocnet::UsageError("export needs --graphml and/or --gexf");
            coocnet::pipeline::run_export(cfg, exp_in, exp_partition, exp_metrics,
                                          exp_graphml, exp_gexf);
        } else if (report->parsed()) {
            if (report->count("--in")) cfg.input.path = report_in;
            coocnet::pipeline::run_report(cfg, report_out);
        }
    } catch (const coocnet::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const coocnet::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const coocnet::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return kExitOk;
}
