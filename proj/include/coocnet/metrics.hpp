#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <thread>
#include <vector>

#include "coocnet/graph.hpp"

namespace coocnet {

struct CentralityVector {
    enum class Kind { kCloseness, kBetweenness };
    Kind kind;
    bool normalized;
    std::vector<double> values;  // node id -> value
};

inline const char* to_string(CentralityVector::Kind kind) {
    return kind == CentralityVector::Kind::kCloseness ? "closeness" : "betweenness";
}

namespace detail {

// BFS that also reports the sum of hop distances and eccentricity inside
// the source's component.
struct BfsProfile {
    std::int64_t dist_sum = 0;
    std::int32_t eccentricity = 0;
    std::size_t reached = 1;  // includes the source
};

inline BfsProfile bfs_profile(const CoGraph& g, NodeId source,
                              std::vector<std::int32_t>& dist,
                              std::vector<NodeId>& queue) {
    dist.assign(g.n(), kUnreachable);
    dist[source] = 0;
    queue.clear();
    queue.push_back(source);
    BfsProfile p;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const NodeId v = queue[head];
        for (const auto& [u, w] : g.neighbors(v)) {
            if (dist[u] != kUnreachable) continue;
            dist[u] = dist[v] + 1;
            p.dist_sum += dist[u];
            p.eccentricity = std::max(p.eccentricity, dist[u]);
            ++p.reached;
            queue.push_back(u);
        }
    }
    return p;
}

}  // namespace detail

// Closeness with Wasserman–Faust component scaling:
//   C(v) = ((n_c - 1) / sum_d) * ((n_c - 1) / (n - 1))
// so values stay comparable on disconnected graphs. With wf_scaled=false the
// within-component value (n_c - 1) / sum_d is returned. Isolated nodes get 0.
inline CentralityVector closeness(const CoGraph& g, bool wf_scaled = true) {
    CentralityVector cv{CentralityVector::Kind::kCloseness, wf_scaled, {}};
    cv.values.assign(g.n(), 0.0);
    std::vector<std::int32_t> dist;
    std::vector<NodeId> queue;
    for (NodeId v = 0; v < g.n(); ++v) {
        const auto p = detail::bfs_profile(g, v, dist, queue);
        if (p.reached <= 1 || p.dist_sum == 0) continue;
        const double nc_minus_1 = static_cast<double>(p.reached - 1);
        double value = nc_minus_1 / static_cast<double>(p.dist_sum);
        if (wf_scaled && g.n() > 1)
            value *= nc_minus_1 / static_cast<double>(g.n() - 1);
        cv.values[v] = value;
    }
    return cv;
}

namespace detail {

// One Brandes source sweep: BFS computing path counts, then dependency
// accumulation in reverse BFS order (predecessors recognized by depth).
inline void brandes_source(const CoGraph& g, NodeId s, std::vector<double>& delta,
                           std::vector<double>& sigma,
                           std::vector<std::int32_t>& dist,
                           std::vector<NodeId>& order) {
    const NodeId n = g.n();
    delta.assign(n, 0.0);
    sigma.assign(n, 0.0);
    dist.assign(n, kUnreachable);
    order.clear();
    sigma[s] = 1.0;
    dist[s] = 0;
    order.push_back(s);
    for (std::size_t head = 0; head < order.size(); ++head) {
        const NodeId v = order[head];
        for (const auto& [u, w] : g.neighbors(v)) {
            if (dist[u] == kUnreachable) {
                dist[u] = dist[v] + 1;
                order.push_back(u);
            }
            if (dist[u] == dist[v] + 1) sigma[u] += sigma[v];
        }
    }
    for (std::size_t i = order.size(); i-- > 1;) {
        const NodeId w = order[i];
        const double coeff = (1.0 + delta[w]) / sigma[w];
        for (const auto& [v, wt] : g.neighbors(w))
            if (dist[v] + 1 == dist[w]) delta[v] += sigma[v] * coeff;
    }
    delta[s] = 0.0;
}

}  // namespace detail

// Exact Brandes betweenness over unweighted shortest paths; each unordered
// pair counts once. Sources run in parallel batches, but per-source
// contributions are reduced in fixed source order, so the result is
// bit-identical for any worker count.
inline CentralityVector betweenness(const CoGraph& g, bool normalized = true,
                                    unsigned workers = 1) {
    const NodeId n = g.n();
    CentralityVector cv{CentralityVector::Kind::kBetweenness, normalized, {}};
    cv.values.assign(n, 0.0);
    if (n == 0) return cv;
    workers = std::max(1u, workers);

    const std::size_t batch =
        std::max<std::size_t>(1, std::min<std::size_t>(64, (64u << 20) / (8u * n + 1)));
    std::vector<std::vector<double>> slots(batch);

    for (NodeId base = 0; base < n; base += static_cast<NodeId>(batch)) {
        const NodeId end = static_cast<NodeId>(
            std::min<std::size_t>(n, base + batch));
        if (workers == 1) {
            std::vector<double> sigma;
            std::vector<std::int32_t> dist;
            std::vector<NodeId> order;
            for (NodeId s = base; s < end; ++s)
                detail::brandes_source(g, s, slots[s - base], sigma, dist, order);
        } else {
            std::atomic<NodeId> next{base};
            std::vector<std::thread> pool;
            pool.reserve(workers);
            for (unsigned t = 0; t < workers; ++t) {
                pool.emplace_back([&] {
                    std::vector<double> sigma;
                    std::vector<std::int32_t> dist;
                    std::vector<NodeId> order;
                    for (NodeId s = next.fetch_add(1); s < end;
                         s = next.fetch_add(1))
                        detail::brandes_source(g, s, slots[s - base], sigma, dist,
                                               order);
                });
            }
            for (auto& th : pool) th.join();
        }
        for (NodeId s = base; s < end; ++s) {
            const auto& delta = slots[s - base];
            for (NodeId v = 0; v < n; ++v) cv.values[v] += delta[v];
        }
    }

    for (auto& v : cv.values) v *= 0.5;  // each unordered pair accumulated twice
    if (normalized && n >= 3) {
        const double denom =
            static_cast<double>(n - 1) * static_cast<double>(n - 2) / 2.0;
        for (auto& v : cv.values) v /= denom;
    }
    return cv;
}

inline std::map<std::int64_t, std::int64_t> degree_histogram(const CoGraph& g) {
    std::map<std::int64_t, std::int64_t> hist;
    for (NodeId v = 0; v < g.n(); ++v)
        ++hist[static_cast<std::int64_t>(g.degree(v))];
    return hist;
}

struct PowerlawFit {
    double exponent = 0.0;
    double r_squared = 0.0;
};

// Least-squares line on (log k, log P(k)) for k >= k_min; exponent is the
// negated slope. Needs at least 3 distinct positive-count degrees, else the
// fit is unavailable.
inline std::optional<PowerlawFit> powerlaw_fit(
    const std::map<std::int64_t, double>& hist, std::int64_t k_min = 1) {
    std::vector<std::pair<double, double>> pts;
    double total = 0.0;
    for (const auto& [k, count] : hist)
        if (k >= std::max<std::int64_t>(k_min, 1) && count > 0) total += count;
    if (total <= 0) return std::nullopt;
    for (const auto& [k, count] : hist) {
        if (k < std::max<std::int64_t>(k_min, 1) || count <= 0) continue;
        pts.emplace_back(std::log(static_cast<double>(k)), std::log(count / total));
    }
    if (pts.size() < 3) return std::nullopt;
    double sx = 0, sy = 0;
    for (const auto& [x, y] : pts) {
        sx += x;
        sy += y;
    }
    const double mx = sx / pts.size();
    const double my = sy / pts.size();
    double sxx = 0, syy = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
        sxy += (x - mx) * (y - my);
    }
    if (sxx == 0) return std::nullopt;
    PowerlawFit fit;
    const double slope = sxy / sxx;
    fit.exponent = -slope;
    fit.r_squared = syy == 0 ? 1.0 : (sxy * sxy) / (sxx * syy);
    return fit;
}

inline std::optional<PowerlawFit> powerlaw_fit(
    const std::map<std::int64_t, std::int64_t>& hist, std::int64_t k_min = 1) {
    std::map<std::int64_t, double> h;
    for (const auto& [k, c] : hist) h[k] = static_cast<double>(c);
    return powerlaw_fit(h, k_min);
}

// Longest shortest path within the largest component; nullopt on the empty
// graph.
inline std::optional<std::int32_t> diameter(const CoGraph& g) {
    if (g.n() == 0) return std::nullopt;
    const auto comps = connected_components(g);
    std::int32_t best = 0;
    std::vector<std::int32_t> dist;
    std::vector<NodeId> queue;
    for (NodeId v = 0; v < g.n(); ++v) {
        if (comps.component[v] != comps.largest) continue;
        const auto p = detail::bfs_profile(g, v, dist, queue);
        best = std::max(best, p.eccentricity);
    }
    return best;
}

struct AverageDegree {
    double standard = 0.0;  // 2m/n
    double ratio = 0.0;     // m/n
};

inline AverageDegree average_degree(const CoGraph& g) {
    AverageDegree d;
    if (g.n() == 0) return d;
    d.standard = 2.0 * static_cast<double>(g.m()) / static_cast<double>(g.n());
    d.ratio = static_cast<double>(g.m()) / static_cast<double>(g.n());
    return d;
}

// Mean hop distance over unordered pairs in the largest component; nullopt
// when that component has fewer than 2 nodes.
inline std::optional<double> average_path_length(const CoGraph& g) {
    if (g.n() == 0) return std::nullopt;
    const auto comps = connected_components(g);
    const std::size_t nc = comps.sizes[static_cast<std::size_t>(comps.largest)];
    if (nc < 2) return std::nullopt;
    std::int64_t total = 0;  // ordered pairs, exact
    std::vector<std::int32_t> dist;
    std::vector<NodeId> queue;
    for (NodeId v = 0; v < g.n(); ++v) {
        if (comps.component[v] != comps.largest) continue;
        total += detail::bfs_profile(g, v, dist, queue).dist_sum;
    }
    return static_cast<double>(total) /
           (static_cast<double>(nc) * static_cast<double>(nc - 1));
}

struct GraphStats {
    std::size_t n = 0;
    std::size_t m = 0;
    std::size_t largest_component_size = 0;
    std::size_t component_count = 0;
    std::optional<std::int32_t> diameter;
    double avg_degree_2m_over_n = 0.0;
    double avg_degree_m_over_n = 0.0;
    std::optional<double> avg_path_length;
    std::map<std::int64_t, std::int64_t> degree_histogram;
    std::optional<PowerlawFit> powerlaw;
};

inline GraphStats compute_graph_stats(const CoGraph& g, std::int64_t powerlaw_k_min = 1) {
    GraphStats s;
    s.n = g.n();
    s.m = g.m();
    const auto comps = connected_components(g);
    s.component_count = comps.count();
    if (comps.largest >= 0)
        s.largest_component_size = comps.sizes[static_cast<std::size_t>(comps.largest)];
    s.diameter = diameter(g);
    const auto deg = average_degree(g);
    s.avg_degree_2m_over_n = deg.standard;
    s.avg_degree_m_over_n = deg.ratio;
    s.avg_path_length = average_path_length(g);
    s.degree_histogram = degree_histogram(g);
    s.powerlaw = powerlaw_fit(s.degree_histogram, powerlaw_k_min);
    return s;
}

}  // namespace coocnet
