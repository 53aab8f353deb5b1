#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include <json.hpp>

#include "coocnet/cooc.hpp"
#include "coocnet/errors.hpp"
#include "coocnet/num_format.hpp"

namespace coocnet {

using NodeId = std::uint32_t;

inline constexpr std::int32_t kUnreachable = std::numeric_limits<std::int32_t>::max();

// Weighted undirected simple graph with per-node sorted adjacency.
// Immutable once built; shortest-path metrics treat it as unweighted.
class CoGraph {
  public:
    CoGraph() = default;

    explicit CoGraph(std::vector<std::string> labels) : labels_(std::move(labels)) {
        adj_.resize(labels_.size());
    }

    NodeId n() const { return static_cast<NodeId>(labels_.size()); }
    std::size_t m() const { return m_; }
    double total_weight() const { return total_weight_; }

    const std::string& label(NodeId v) const { return labels_.at(v); }
    const std::vector<std::string>& labels() const { return labels_; }

    const std::vector<std::pair<NodeId, double>>& neighbors(NodeId v) const {
        return adj_.at(v);
    }

    std::size_t degree(NodeId v) const { return adj_.at(v).size(); }

    double weighted_degree(NodeId v) const {
        double sum = 0.0;
        for (const auto& [u, w] : adj_.at(v)) sum += w;
        return sum;
    }

    // Builder step; callers add each undirected edge once.
    void add_edge(NodeId i, NodeId j, double w) {
        if (i == j) throw DataError("self-loops are not allowed");
        if (i >= n() || j >= n()) throw std::out_of_range("edge endpoint out of range");
        adj_[i].emplace_back(j, w);
        adj_[j].emplace_back(i, w);
        ++m_;
        total_weight_ += w;
    }

    void finalize() {
        for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
    }

    // (i, j, weight) with i < j, sorted.
    std::vector<std::tuple<NodeId, NodeId, double>> edges() const {
        std::vector<std::tuple<NodeId, NodeId, double>> out;
        out.reserve(m_);
        for (NodeId i = 0; i < n(); ++i)
            for (const auto& [j, w] : adj_[i])
                if (i < j) out.emplace_back(i, j, w);
        return out;
    }

  private:
    std::vector<std::string> labels_;
    std::vector<std::vector<std::pair<NodeId, double>>> adj_;
    std::size_t m_ = 0;
    double total_weight_ = 0.0;
};

// Edge (i,j) materializes iff weight >= tau. Isolated vocabulary words stay
// as degree-0 nodes unless drop_isolated is set (ids are then re-packed in
// ascending old-id order).
inline CoGraph from_matrix(const CoocMatrix& matrix, const Vocabulary& vocab,
                           double tau = 1.0, bool drop_isolated = false) {
    if (tau < 1.0) throw UsageError("tau must be >= 1");
    const auto entries = matrix.entries();
    if (!drop_isolated) {
        CoGraph g(vocab.words());
        for (const auto& [i, j, w] : entries)
            if (w >= tau) g.add_edge(i, j, w);
        g.finalize();
        return g;
    }
    std::vector<NodeId> remap(vocab.size(), std::numeric_limits<NodeId>::max());
    std::vector<bool> touched(vocab.size(), false);
    for (const auto& [i, j, w] : entries)
        if (w >= tau) touched[i] = touched[j] = true;
    std::vector<std::string> labels;
    for (NodeId v = 0; v < vocab.size(); ++v) {
        if (!touched[v]) continue;
        remap[v] = static_cast<NodeId>(labels.size());
        labels.push_back(vocab.word_of(v));
    }
    CoGraph g(std::move(labels));
    for (const auto& [i, j, w] : entries)
        if (w >= tau) g.add_edge(remap[i], remap[j], w);
    g.finalize();
    return g;
}

struct ComponentIndex {
    std::vector<std::int32_t> component;  // node -> component id
    std::vector<std::size_t> sizes;       // component id -> size
    std::int32_t largest = -1;            // -1 on the empty graph

    std::size_t count() const { return sizes.size(); }
};

// BFS labeling in ascending node order, so component ids are ordered by
// their smallest member; size ties therefore resolve to the component
// containing the smallest node id.
inline ComponentIndex connected_components(const CoGraph& g) {
    ComponentIndex idx;
    idx.component.assign(g.n(), -1);
    std::vector<NodeId> queue;
    for (NodeId s = 0; s < g.n(); ++s) {
        if (idx.component[s] != -1) continue;
        const auto cid = static_cast<std::int32_t>(idx.sizes.size());
        std::size_t size = 0;
        queue.clear();
        queue.push_back(s);
        idx.component[s] = cid;
        while (!queue.empty()) {
            const NodeId v = queue.back();
            queue.pop_back();
            ++size;
            for (const auto& [u, w] : g.neighbors(v)) {
                if (idx.component[u] == -1) {
                    idx.component[u] = cid;
                    queue.push_back(u);
                }
            }
        }
        idx.sizes.push_back(size);
        if (idx.largest < 0 || size > idx.sizes[static_cast<std::size_t>(idx.largest)])
            idx.largest = cid;
    }
    return idx;
}

// Unweighted hop distances; unreachable nodes get kUnreachable.
inline std::vector<std::int32_t> bfs_distances(const CoGraph& g, NodeId source) {
    if (source >= g.n()) throw std::out_of_range("bfs source out of range");
    std::vector<std::int32_t> dist(g.n(), kUnreachable);
    dist[source] = 0;
    std::queue<NodeId> q;
    q.push(source);
    while (!q.empty()) {
        const NodeId v = q.front();
        q.pop();
        for (const auto& [u, w] : g.neighbors(v)) {
            if (dist[u] == kUnreachable) {
                dist[u] = dist[v] + 1;
                q.push(u);
            }
        }
    }
    return dist;
}

inline void save_edgelist_csv(const CoGraph& g, std::ostream& out) {
    out << "word_i,word_j,weight\n";
    for (const auto& [i, j, w] : g.edges())
        out << csv::quote(g.label(i)) << ',' << csv::quote(g.label(j)) << ','
            << format_double(w) << "\n";
}

inline void save_nodelist_csv(const CoGraph& g, std::ostream& out) {
    out << "id,word,degree\n";
    for (NodeId v = 0; v < g.n(); ++v)
        out << v << ',' << csv::quote(g.label(v)) << ',' << g.degree(v) << "\n";
}

// Checkpoint: one JSON object per line (meta, then nodes, then edges).
inline void save_graph_jsonl(const CoGraph& g, std::ostream& out) {
    nlohmann::ordered_json meta;
    meta["type"] = "meta";
    meta["n"] = g.n();
    meta["m"] = g.m();
    out << meta.dump() << "\n";
    for (NodeId v = 0; v < g.n(); ++v) {
        nlohmann::ordered_json j;
        j["type"] = "node";
        j["id"] = v;
        j["word"] = g.label(v);
        out << j.dump() << "\n";
    }
    for (const auto& [i, j, w] : g.edges()) {
        nlohmann::ordered_json e;
        e["type"] = "edge";
        e["source"] = i;
        e["target"] = j;
        e["weight"] = w;
        out << e.dump() << "\n";
    }
}

inline void save_graph_jsonl(const CoGraph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write graph checkpoint: " + path);
    save_graph_jsonl(g, out);
}

inline CoGraph load_graph_jsonl(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open graph checkpoint: " + path);
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> labels;
    std::vector<std::tuple<NodeId, NodeId, double>> edges;
    bool have_meta = false;
    std::size_t expect_n = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("type"))
            throw DataError("malformed graph checkpoint line " +
                            std::to_string(line_no) + " in " + path);
        const std::string type = j.at("type").get<std::string>();
        if (type == "meta") {
            have_meta = true;
            expect_n = j.at("n").get<std::size_t>();
        } else if (type == "node") {
            const auto id = j.at("id").get<std::size_t>();
            if (id != labels.size())
                throw DataError("graph checkpoint nodes out of order at line " +
                                std::to_string(line_no));
            labels.push_back(j.at("word").get<std::string>());
        } else if (type == "edge") {
            edges.emplace_back(j.at("source").get<NodeId>(),
                               j.at("target").get<NodeId>(),
                               j.at("weight").get<double>());
        } else {
            throw DataError("unknown record type '" + type + "' at line " +
                            std::to_string(line_no));
        }
    }
    if (!have_meta || labels.size() != expect_n)
        throw DataError("graph checkpoint inconsistent node count: " + path);
    CoGraph g(std::move(labels));
    for (const auto& [i, j, w] : edges) g.add_edge(i, j, w);
    g.finalize();
    return g;
}

}  // namespace coocnet
