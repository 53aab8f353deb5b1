#include <catch2/catch_amalgamated.hpp>

#include "coocnet/keywords.hpp"
#include "helpers/test_support.hpp"

using namespace coocnet;
namespace ts = testsupport;

TEST_CASE("top_keywords sorts by value with word tie-break") {
    const std::vector<std::pair<std::string, double>> scores{
        {"مجلس", 0.18}, {"ایران", 0.21}};
    const KeywordTable t = top_keywords(scores, "closeness", 2);
    REQUIRE(t.rows.size() == 2);
    CHECK(t.rows[0].rank == 1);
    CHECK(t.rows[0].word == "ایران");
    CHECK(t.rows[1].rank == 2);
    CHECK(t.rows[1].word == "مجلس");

    // values non-increasing down the table
    for (std::size_t i = 1; i < t.rows.size(); ++i)
        CHECK(t.rows[i - 1].value >= t.rows[i].value);
}

TEST_CASE("k = 0 is rejected, k beyond size truncates") {
    const std::vector<std::pair<std::string, double>> scores{{"a", 1.0}};
    CHECK_THROWS_AS(top_keywords(scores, "closeness", 0), UsageError);
    CHECK(top_keywords(scores, "closeness", 10).rows.size() == 1);
}

TEST_CASE("ties resolve by ascending word codepoint order") {
    const std::vector<std::pair<std::string, double>> scores{
        {"ب", 0.5}, {"الف", 0.5}, {"ج", 0.5}};
    const KeywordTable t = top_keywords(scores, "closeness", 3);
    CHECK(t.rows[0].word == "الف");
    CHECK(t.rows[1].word == "ب");
    CHECK(t.rows[2].word == "ج");
}

TEST_CASE("ranking is invariant under positive affine rescaling") {
    ts::TestRng rng(0xAF1);
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<std::pair<std::string, double>> scores;
        const std::size_t n = 1 + rng.below(30);
        for (std::size_t i = 0; i < n; ++i)
            scores.emplace_back("w" + std::to_string(i), rng.uniform());
        const double a = 0.1 + 5.0 * rng.uniform();
        const double b = -2.0 + 4.0 * rng.uniform();
        auto rescaled = scores;
        for (auto& [w, v] : rescaled) v = a * v + b;

        const auto t1 = top_keywords(scores, "closeness", n);
        const auto t2 = top_keywords(rescaled, "closeness", n);
        REQUIRE(t1.rows.size() == t2.rows.size());
        for (std::size_t i = 0; i < t1.rows.size(); ++i)
            REQUIRE(t1.rows[i].word == t2.rows[i].word);
    }
}

TEST_CASE("top-n truncated to k equals top-k") {
    ts::TestRng rng(0x9F2);
    std::vector<std::pair<std::string, double>> scores;
    for (std::size_t i = 0; i < 25; ++i)
        scores.emplace_back("w" + std::to_string(i), rng.uniform());
    const auto full = top_keywords(scores, "betweenness", 25);
    for (std::size_t k : {1u, 5u, 12u}) {
        const auto topk = top_keywords(scores, "betweenness", k);
        REQUIRE(topk.rows.size() == k);
        for (std::size_t i = 0; i < k; ++i) {
            CHECK(topk.rows[i].word == full.rows[i].word);
            CHECK(topk.rows[i].rank == full.rows[i].rank);
        }
    }
}

TEST_CASE("markdown and CSV emitters carry identical rows at 4 decimals") {
    const std::vector<std::pair<std::string, double>> scores{
        {"ایران", 0.21219}, {"مجلس", 0.18}};
    const KeywordTable t = top_keywords(scores, "closeness", 2);
    const std::string md = keyword_table_markdown(t);
    const std::string csv = keyword_table_csv(t);
    CHECK(md.find("| 1 | ایران | closeness | 0.2122 |") != std::string::npos);
    CHECK(md.find("| 2 | مجلس | closeness | 0.1800 |") != std::string::npos);
    CHECK(csv.find("1,ایران,closeness,0.2122") != std::string::npos);
    CHECK(csv.find("2,مجلس,closeness,0.1800") != std::string::npos);
}

TEST_CASE("centrality-vector overload keeps label alignment") {
    const CoGraph g = ts::make_graph(3, {{0, 1, 1}, {1, 2, 1}});
    const auto cv = closeness(g);
    const KeywordTable t = top_keywords(cv, g.labels(), 3);
    CHECK(t.rows[0].word == "w1");  // center of P3
    CHECK(t.rows[0].metric == "closeness");
}
