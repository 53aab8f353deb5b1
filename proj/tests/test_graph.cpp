#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "coocnet/cooc.hpp"
#include "coocnet/graph.hpp"
#include "helpers/test_support.hpp"

using namespace coocnet;
namespace ts = testsupport;

namespace {

// vocabulary {A,B,C} with the d1/d2 fixture weights w(A,B)=1 w(A,C)=1 w(B,C)=2
std::pair<CoocMatrix, Vocabulary> triangle_matrix() {
    Vocabulary v;
    v.add_or_get("A");
    v.add_or_get("B");
    v.add_or_get("C");
    CoocMatrix m(v.size(), CoocMode::kDocBinary);
    m.add(0, 1, 1.0);
    m.add(0, 2, 1.0);
    m.add(1, 2, 2.0);
    return {m, v};
}

}  // namespace

TEST_CASE("from_matrix materializes edges at or above tau") {
    auto [m, v] = triangle_matrix();

    const CoGraph g1 = from_matrix(m, v, 1.0);
    CHECK(g1.n() == 3);
    CHECK(g1.m() == 3);
    CHECK(g1.neighbors(0).size() == 2);
    const auto edges = g1.edges();
    REQUIRE(edges.size() == 3);
    CHECK(edges[0] == std::tuple<NodeId, NodeId, double>{0, 1, 1.0});
    CHECK(edges[2] == std::tuple<NodeId, NodeId, double>{1, 2, 2.0});

    const CoGraph g2 = from_matrix(m, v, 2.0);
    CHECK(g2.n() == 3);
    CHECK(g2.m() == 1);
    CHECK(g2.degree(0) == 0);  // A isolated

    const CoGraph g3 = from_matrix(m, v, 2.0, /*drop_isolated=*/true);
    CHECK(g3.n() == 2);
    CHECK(g3.m() == 1);
    CHECK(g3.label(0) == "B");
    CHECK(g3.label(1) == "C");

    CHECK_THROWS_AS(from_matrix(m, v, 0.5), UsageError);
}

TEST_CASE("empty matrix keeps all vocabulary words as isolated nodes") {
    Vocabulary v;
    v.add_or_get("x");
    v.add_or_get("y");
    const CoocMatrix m(v.size(), CoocMode::kDocBinary);
    const CoGraph g = from_matrix(m, v, 1.0);
    CHECK(g.n() == 2);
    CHECK(g.m() == 0);
}

TEST_CASE("edge dump reproduces matrix entries at or above tau") {
    auto [m, v] = triangle_matrix();
    for (double tau : {1.0, 2.0}) {
        const CoGraph g = from_matrix(m, v, tau);
        std::vector<std::tuple<NodeId, NodeId, double>> expect;
        for (const auto& [i, j, w] : m.entries())
            if (w >= tau) expect.emplace_back(i, j, w);
        CHECK(g.edges() == expect);
    }
}

TEST_CASE("connected components with size and tie-break rules") {
    // triangle {0,1,2} plus isolated node 3
    const CoGraph g = ts::make_graph(4, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
    const auto idx = connected_components(g);
    REQUIRE(idx.count() == 2);
    CHECK(idx.sizes[0] == 3);
    CHECK(idx.sizes[1] == 1);
    CHECK(idx.largest == 0);
    CHECK(idx.component[0] == idx.component[1]);
    CHECK(idx.component[3] != idx.component[0]);

    const CoGraph empty = ts::make_graph(0, {});
    CHECK(connected_components(empty).count() == 0);

    // two equal-size components; the one containing node 0 wins
    const CoGraph pair2 = ts::make_graph(4, {{0, 1, 1}, {2, 3, 1}});
    const auto tie = connected_components(pair2);
    REQUIRE(tie.count() == 2);
    CHECK(tie.sizes[0] == tie.sizes[1]);
    CHECK(tie.largest == tie.component[0]);
}

TEST_CASE("BFS hop distances with unreachable sentinel") {
    const CoGraph p3 = ts::make_graph(3, {{0, 1, 1}, {1, 2, 1}});
    CHECK(bfs_distances(p3, 0) == std::vector<std::int32_t>{0, 1, 2});

    const CoGraph iso = ts::make_graph(3, {{1, 2, 1}});
    const auto d = bfs_distances(iso, 0);
    CHECK(d[0] == 0);
    CHECK(d[1] == kUnreachable);
    CHECK(d[2] == kUnreachable);

    const CoGraph k4 = ts::make_graph(
        4, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}});
    CHECK(bfs_distances(k4, 2) == std::vector<std::int32_t>{1, 1, 0, 1});

    CHECK_THROWS_AS(bfs_distances(p3, 7), std::out_of_range);
}

TEST_CASE("property: BFS distances satisfy the edge triangle inequality") {
    ts::TestRng rng(0xB5F5);
    for (int iter = 0; iter < 40; ++iter) {
        const auto g = ts::random_er_graph(2 + rng.below(40), 0.15, rng);
        for (NodeId s = 0; s < g.n(); s += 3) {
            const auto d = bfs_distances(g, s);
            for (NodeId u = 0; u < g.n(); ++u) {
                if (d[u] == kUnreachable) continue;
                for (const auto& [v, w] : g.neighbors(u)) {
                    REQUIRE(d[v] != kUnreachable);
                    REQUIRE(d[v] <= d[u] + 1);
                }
            }
        }
    }
}

TEST_CASE("property: component structure is invariant under relabeling") {
    ts::TestRng rng(0x9E1A);
    for (int iter = 0; iter < 25; ++iter) {
        const std::size_t n = 2 + rng.below(30);
        const auto g = ts::random_er_graph(n, 0.1, rng);

        // random node permutation
        std::vector<NodeId> perm(n);
        for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<NodeId>(i);
        for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);

        std::vector<std::tuple<NodeId, NodeId, double>> edges;
        for (const auto& [i, j, w] : g.edges()) {
            NodeId pi = perm[i], pj = perm[j];
            if (pi > pj) std::swap(pi, pj);
            edges.emplace_back(pi, pj, w);
        }
        const auto h = ts::make_graph(n, edges);

        const auto cg = connected_components(g);
        const auto ch = connected_components(h);
        REQUIRE(cg.count() == ch.count());
        for (NodeId u = 0; u < n; ++u)
            for (NodeId v = 0; v < n; ++v)
                REQUIRE((cg.component[u] == cg.component[v]) ==
                        (ch.component[perm[u]] == ch.component[perm[v]]));
    }
}

TEST_CASE("graph checkpoint round-trips through JSONL") {
    auto [m, v] = triangle_matrix();
    const CoGraph g = from_matrix(m, v, 1.0);
    const auto dir = ts::make_temp_dir("graph");
    save_graph_jsonl(g, (dir / "g.jsonl").string());
    const CoGraph back = load_graph_jsonl((dir / "g.jsonl").string());
    CHECK(back.n() == g.n());
    CHECK(back.m() == g.m());
    CHECK(back.labels() == g.labels());
    CHECK(back.edges() == g.edges());

    CHECK_THROWS_AS(load_graph_jsonl((dir / "missing.jsonl").string()), IoError);
}

TEST_CASE("edge list and node list text formats") {
    auto [m, v] = triangle_matrix();
    const CoGraph g = from_matrix(m, v, 1.0);
    std::ostringstream edges, nodes;
    save_edgelist_csv(g, edges);
    save_nodelist_csv(g, nodes);
    CHECK(edges.str() ==
          "word_i,word_j,weight\n"
          "A,B,1\n"
          "A,C,1\n"
          "B,C,2\n");
    CHECK(nodes.str() ==
          "id,word,degree\n"
          "0,A,2\n"
          "1,B,2\n"
          "2,C,2\n");
}

TEST_CASE("self loops and bad endpoints are rejected") {
    CoGraph g(std::vector<std::string>{"a", "b"});
    CHECK_THROWS_AS(g.add_edge(0, 0, 1.0), DataError);
    CHECK_THROWS_AS(g.add_edge(0, 5, 1.0), std::out_of_range);
}
