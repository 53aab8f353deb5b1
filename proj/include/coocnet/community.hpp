#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "coocnet/errors.hpp"
#include "coocnet/graph.hpp"
#include "coocnet/metrics.hpp"

namespace coocnet {

struct Partition {
    std::vector<std::uint32_t> assignment;  // node -> community, dense ids
    std::uint32_t community_count = 0;
    double q = 0.0;                 // Newman–Girvan modularity of `assignment`
    std::vector<double> level_q;    // optimized objective after each level
};

// Newman–Girvan modularity Q = sum_c [ w_c/W - (s_c/(2W))^2 ] over edge
// weights; nullopt when the graph has no edges.
inline std::optional<double> modularity(const CoGraph& g,
                                        const std::vector<std::uint32_t>& assignment,
                                        bool weighted = true,
                                        double resolution = 1.0) {
    if (assignment.size() != g.n())
        throw DataError("assignment must cover every node");
    double total = 0.0;
    std::unordered_map<std::uint32_t, double> intra;
    std::unordered_map<std::uint32_t, double> degsum;
    for (NodeId v = 0; v < g.n(); ++v) {
        for (const auto& [u, w] : g.neighbors(v)) {
            const double wt = weighted ? w : 1.0;
            if (v < u) {
                total += wt;
                if (assignment[v] == assignment[u]) intra[assignment[v]] += wt;
            }
            degsum[assignment[v]] += wt;
        }
    }
    if (total <= 0.0) return std::nullopt;
    double q = 0.0;
    for (const auto& [c, s] : degsum) {
        const double wc = intra.count(c) ? intra.at(c) : 0.0;
        const double frac = s / (2.0 * total);
        q += wc / total - resolution * frac * frac;
    }
    return q;
}

namespace detail {

// splitmix64; hand-rolled so shuffles are identical across toolchains.
class DetRng {
  public:
    explicit DetRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        std::uint64_t r;
        do {
            r = next();
        } while (r >= limit);
        return r % bound;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

  private:
    std::uint64_t state_;
};

struct AggGraph {
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;  // no loops here
    std::vector<double> loop;  // self-loop weight, counted once
    std::vector<double> k;     // weighted degree, loops twice
    double total = 0.0;        // total edge weight, loops once

    std::size_t n() const { return adj.size(); }
};

inline AggGraph agg_from_graph(const CoGraph& g, bool weighted) {
    AggGraph a;
    a.adj.resize(g.n());
    a.loop.assign(g.n(), 0.0);
    a.k.assign(g.n(), 0.0);
    for (NodeId v = 0; v < g.n(); ++v) {
        for (const auto& [u, w] : g.neighbors(v)) {
            const double wt = weighted ? w : 1.0;
            a.adj[v].emplace_back(u, wt);
            a.k[v] += wt;
            if (v < u) a.total += wt;
        }
    }
    return a;
}

// One Louvain local-move phase. Nodes are visited in an order shuffled by
// `rng`; each node moves to the neighboring community with the largest
// strictly positive modularity gain, ties to the lowest community id.
inline bool one_level(const AggGraph& a, double resolution, DetRng& rng,
                      std::vector<std::uint32_t>& node2com) {
    const std::size_t n = a.n();
    node2com.resize(n);
    std::vector<double> com_tot(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
        node2com[v] = static_cast<std::uint32_t>(v);
        com_tot[v] = a.k[v];
    }
    std::vector<std::uint32_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
    rng.shuffle(order);

    const double two_w = 2.0 * a.total;
    bool any_move = false;
    std::map<std::uint32_t, double> neigh;  // ordered: ties pick lowest id
    bool moved = true;
    while (moved) {
        moved = false;
        for (const std::uint32_t v : order) {
            neigh.clear();
            for (const auto& [u, w] : a.adj[v])
                if (u != v) neigh[node2com[u]] += w;
            const std::uint32_t c_old = node2com[v];
            com_tot[c_old] -= a.k[v];
            const double stay_links = neigh.count(c_old) ? neigh[c_old] : 0.0;
            const double stay_gain =
                stay_links - resolution * a.k[v] * com_tot[c_old] / two_w;
            std::uint32_t best_com = c_old;
            double best_gain = stay_gain;
            for (const auto& [c, links] : neigh) {
                if (c == c_old) continue;
                const double gain =
                    links - resolution * a.k[v] * com_tot[c] / two_w;
                if (gain > best_gain + 1e-12) {
                    best_gain = gain;
                    best_com = c;
                }
            }
            com_tot[best_com] += a.k[v];
            node2com[v] = best_com;
            if (best_com != c_old) {
                moved = true;
                any_move = true;
            }
        }
    }
    return any_move;
}

// Renumber communities densely, ordered by smallest member node.
inline std::uint32_t densify(std::vector<std::uint32_t>& assignment) {
    std::unordered_map<std::uint32_t, std::uint32_t> remap;
    std::uint32_t next = 0;
    for (auto& c : assignment) {
        auto [it, inserted] = remap.emplace(c, next);
        if (inserted) ++next;
        c = it->second;
    }
    return next;
}

inline AggGraph aggregate(const AggGraph& a,
                          const std::vector<std::uint32_t>& node2com,
                          std::uint32_t count) {
    AggGraph out;
    out.adj.resize(count);
    out.loop.assign(count, 0.0);
    out.k.assign(count, 0.0);
    out.total = a.total;
    std::vector<std::map<std::uint32_t, double>> acc(count);
    for (std::size_t v = 0; v < a.n(); ++v) {
        const std::uint32_t cv = node2com[v];
        out.loop[cv] += a.loop[v];
        for (const auto& [u, w] : a.adj[v]) {
            const std::uint32_t cu = node2com[u];
            if (cu == cv) {
                if (u > v) out.loop[cv] += w;  // intra edge, count once
            } else {
                acc[cv][cu] += w;
            }
        }
    }
    for (std::uint32_t c = 0; c < count; ++c) {
        out.k[c] = 2.0 * out.loop[c];
        for (const auto& [u, w] : acc[c]) {
            out.adj[c].emplace_back(u, w);
            out.k[c] += w;
        }
    }
    return out;
}

inline double agg_modularity(const AggGraph& a,
                             const std::vector<std::uint32_t>& node2com,
                             double resolution) {
    std::unordered_map<std::uint32_t, double> intra;
    std::unordered_map<std::uint32_t, double> degsum;
    for (std::size_t v = 0; v < a.n(); ++v) {
        const std::uint32_t c = node2com[v];
        intra[c] += a.loop[v];
        degsum[c] += a.k[v];
        for (const auto& [u, w] : a.adj[v])
            if (node2com[u] == c && u > v) intra[c] += w;
    }
    double q = 0.0;
    for (const auto& [c, s] : degsum) {
        const double wc = intra.count(c) ? intra.at(c) : 0.0;
        const double frac = s / (2.0 * a.total);
        q += wc / a.total - resolution * frac * frac;
    }
    return q;
}

}  // namespace detail

namespace detail {

inline Partition louvain_single(const CoGraph& g, std::uint64_t run_seed,
                                double resolution, bool weighted) {
    detail::DetRng rng(run_seed);
    detail::AggGraph agg = detail::agg_from_graph(g, weighted);

    Partition part;
    part.assignment.resize(g.n());
    std::vector<std::uint32_t> node_to_agg(g.n());
    for (NodeId v = 0; v < g.n(); ++v) node_to_agg[v] = v;

    double q_prev = -1.0;
    std::vector<std::uint32_t> local;
    while (true) {
        const bool moved = detail::one_level(agg, resolution, rng, local);
        const std::uint32_t count = detail::densify(local);
        const double q_now = detail::agg_modularity(agg, local, resolution);
        part.level_q.push_back(q_now);
        for (auto& c : node_to_agg) c = local[c];
        if (!moved || count == agg.n() || q_now - q_prev < 1e-7) break;
        q_prev = q_now;
        agg = detail::aggregate(agg, local, count);
    }

    part.assignment = node_to_agg;
    part.community_count = detail::densify(part.assignment);
    const auto q = modularity(g, part.assignment, weighted);
    part.q = q ? *q : 0.0;
    return part;
}

}  // namespace detail

// Two-phase Louvain with deterministic sub-seeded restarts; the best-Q run
// wins. The greedy local phase can only merge, so a single visit order can
// land in a poor local optimum; restarts recover near-optimal partitions
// without Leiden-style refinement. Deterministic for a fixed (graph, seed);
// the reported q is always the plain Newman–Girvan recomputation on the
// input graph, whatever the resolution used during optimization.
inline Partition louvain(const CoGraph& g, std::uint64_t seed = 42,
                         double resolution = 1.0, bool weighted = true,
                         unsigned restarts = 16) {
    if (g.m() == 0) throw DataError("louvain requires at least one edge");
    detail::DetRng seeder(seed ^ 0xC00C0FFEEull);
    Partition best;
    bool first = true;
    for (unsigned r = 0; r < std::max(1u, restarts); ++r) {
        Partition p = detail::louvain_single(g, seeder.next(), resolution, weighted);
        if (first || p.q > best.q) {
            best = std::move(p);
            first = false;
        }
    }
    return best;
}

// Per-community member words ranked by the given centrality (descending,
// ties by ascending word), truncated to k.
inline std::vector<std::vector<std::pair<std::string, double>>> community_keywords(
    const CoGraph& g, const Partition& p, const CentralityVector& cv,
    std::size_t k) {
    if (k < 1) throw UsageError("k must be >= 1");
    if (p.assignment.size() != g.n() || cv.values.size() != g.n())
        throw DataError("partition/centrality size mismatch");
    std::vector<std::vector<std::pair<std::string, double>>> out(p.community_count);
    for (NodeId v = 0; v < g.n(); ++v)
        out[p.assignment[v]].emplace_back(g.label(v), cv.values[v]);
    for (auto& members : out) {
        std::sort(members.begin(), members.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) return a.second > b.second;
            return a.first < b.first;
        });
        if (members.size() > k) members.resize(k);
    }
    return out;
}

}  // namespace coocnet
