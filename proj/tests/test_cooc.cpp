#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <sstream>

#include "coocnet/cooc.hpp"
#include "helpers/test_support.hpp"

using namespace coocnet;
namespace ts = testsupport;

namespace {

TokenDoc doc(std::string id, std::vector<std::string> kept) {
    TokenDoc d;
    d.post_id = std::move(id);
    d.tokens = kept;
    d.kept_tokens = std::move(kept);
    return d;
}

// d1 = {A,B,B,C}, d2 = {B,C}
std::vector<TokenDoc> two_doc_fixture() {
    return {doc("d1", {"A", "B", "B", "C"}), doc("d2", {"B", "C"})};
}

std::vector<TokenDoc> random_docs(ts::TestRng& rng, std::size_t max_docs,
                                  std::size_t max_vocab) {
    const std::size_t n_docs = 1 + rng.below(max_docs);
    const std::size_t vocab = 2 + rng.below(max_vocab - 1);
    std::vector<TokenDoc> docs;
    for (std::size_t d = 0; d < n_docs; ++d) {
        std::vector<std::string> toks;
        const std::size_t len = rng.below(12);
        for (std::size_t i = 0; i < len; ++i)
            toks.push_back("t" + std::to_string(rng.below(vocab)));
        docs.push_back(doc("d" + std::to_string(d), std::move(toks)));
    }
    return docs;
}

}  // namespace

TEST_CASE("vocabulary ids follow first occurrence") {
    const auto docs = std::vector<TokenDoc>{doc("1", {"a", "b"}), doc("2", {"b", "c"})};
    const Vocabulary v = build_vocab(docs);
    REQUIRE(v.size() == 3);
    CHECK(v.id_of("a") == 0u);
    CHECK(v.id_of("b") == 1u);
    CHECK(v.id_of("c") == 2u);
    CHECK(v.word_of(2) == "c");

    CHECK(build_vocab({}).size() == 0);
    CHECK(build_vocab({doc("1", {"x", "x", "x"})}).size() == 1);
}

TEST_CASE("min_df prunes rare words but keeps first-occurrence order") {
    const auto docs = std::vector<TokenDoc>{
        doc("1", {"rare", "a", "b"}), doc("2", {"b", "a"}), doc("3", {"a"})};
    const Vocabulary v = build_vocab(docs, 2);
    REQUIRE(v.size() == 2);
    CHECK(v.id_of("a") == 0u);
    CHECK(v.id_of("b") == 1u);
    CHECK_FALSE(v.id_of("rare").has_value());
}

TEST_CASE("doc_binary weights count co-occurring documents") {
    const auto docs = two_doc_fixture();
    const Vocabulary v = build_vocab(docs);
    const CoocMatrix m = build_cooc(docs, v, CoocMode::kDocBinary);
    const auto a = *v.id_of("A"), b = *v.id_of("B"), c = *v.id_of("C");
    CHECK(m.weight(a, b) == 1.0);
    CHECK(m.weight(a, c) == 1.0);
    CHECK(m.weight(b, c) == 2.0);
    CHECK(m.nnz() == 3);
}

TEST_CASE("pair_product and pair_min weight by within-document frequency") {
    const auto docs = two_doc_fixture();
    const Vocabulary v = build_vocab(docs);
    const auto a = *v.id_of("A"), b = *v.id_of("B"), c = *v.id_of("C");

    const CoocMatrix prod = build_cooc(docs, v, CoocMode::kPairProduct);
    CHECK(prod.weight(a, b) == 2.0);  // tf_A=1, tf_B=2 in d1
    CHECK(prod.weight(a, c) == 1.0);
    CHECK(prod.weight(b, c) == 3.0);  // 2*1 + 1*1

    const CoocMatrix mn = build_cooc(docs, v, CoocMode::kPairMin);
    CHECK(mn.weight(a, b) == 1.0);
    CHECK(mn.weight(a, c) == 1.0);
    CHECK(mn.weight(b, c) == 2.0);  // min(2,1) + min(1,1)
}

TEST_CASE("single-word documents contribute no entries") {
    const auto docs = std::vector<TokenDoc>{doc("1", {"solo"}), doc("2", {"solo"})};
    const Vocabulary v = build_vocab(docs);
    CHECK(build_cooc(docs, v, CoocMode::kDocBinary).nnz() == 0);
}

TEST_CASE("symmetric storage keeps one entry per unordered pair") {
    Vocabulary v;
    const auto benzin = v.add_or_get("بنزین");
    const auto gheymat = v.add_or_get("قیمت");
    const auto sahmie = v.add_or_get("سهمیه");
    CoocMatrix m(v.size(), CoocMode::kDocBinary);
    for (int i = 0; i < 11; ++i) m.add(benzin, gheymat, 1.0);
    for (int i = 0; i < 8; ++i) m.add(sahmie, benzin, 1.0);
    CHECK(m.weight(benzin, gheymat) == 11.0);
    CHECK(m.weight(gheymat, benzin) == 11.0);  // symmetric lookup
    CHECK(m.weight(sahmie, benzin) == 8.0);
    CHECK(m.weight(benzin, sahmie) == 8.0);
    CHECK(m.nnz() == 2);  // stored once each
    CHECK(m.weight(benzin, benzin) == 0.0);
    CHECK_THROWS_AS(m.add(benzin, benzin, 1.0), DataError);
}

TEST_CASE("tokens missing from the vocabulary are an internal error") {
    const auto docs = std::vector<TokenDoc>{doc("1", {"a", "b"})};
    Vocabulary v;
    v.add_or_get("a");
    CHECK_THROWS_AS(build_cooc(docs, v, CoocMode::kDocBinary), DataError);
    CHECK(build_cooc(docs, v, CoocMode::kDocBinary, /*skip_missing=*/true).nnz() == 0);
}

TEST_CASE("matrix CSV: header-only when empty, 3 data rows for the fixture") {
    const auto docs = two_doc_fixture();
    const Vocabulary v = build_vocab(docs);

    std::ostringstream empty_out;
    matrix_to_csv(CoocMatrix(v.size(), CoocMode::kDocBinary), v, empty_out);
    CHECK(empty_out.str() == "word_i,word_j,weight\n");

    const CoocMatrix m = build_cooc(docs, v, CoocMode::kDocBinary);
    std::ostringstream out;
    matrix_to_csv(m, v, out);
    CHECK(out.str() ==
          "word_i,word_j,weight\n"
          "A,B,1\n"
          "A,C,1\n"
          "B,C,2\n");
}

TEST_CASE("matrix and vocabulary round-trip through CSV") {
    const auto docs = two_doc_fixture();
    const Vocabulary v = build_vocab(docs);
    const CoocMatrix m = build_cooc(docs, v, CoocMode::kDocBinary);

    const auto dir = ts::make_temp_dir("cooc");
    matrix_to_csv(m, v, (dir / "m.csv").string());
    save_vocab_csv(v, (dir / "v.csv").string());

    const Vocabulary v2 = load_vocab_csv((dir / "v.csv").string());
    CHECK(v2 == v);
    const CoocMatrix m2 = matrix_from_csv((dir / "m.csv").string(), v2);
    CHECK(m2 == m);
}

TEST_CASE("property: symmetry, zero diagonal, doc_binary oracle, order independence") {
    ts::TestRng rng(0xC0C0);
    for (int iter = 0; iter < 100; ++iter) {
        auto docs = random_docs(rng, 20, 30);
        const Vocabulary v = build_vocab(docs);
        if (v.size() == 0) continue;
        const CoocMatrix m = build_cooc(docs, v, CoocMode::kDocBinary);

        // weights equal brute-force document set intersections, exactly
        const auto oracle = ts::oracle_doc_binary_counts(docs);
        std::size_t oracle_nnz = 0;
        for (const auto& [pair, count] : oracle) {
            ++oracle_nnz;
            REQUIRE(m.weight(*v.id_of(pair.first), *v.id_of(pair.second)) ==
                    static_cast<double>(count));
        }
        REQUIRE(m.nnz() == oracle_nnz);

        // bound: w <= number of documents; nnz <= sum over docs of C(u_d, 2)
        std::size_t bound = 0;
        for (const auto& d : docs) {
            std::set<std::string> uniq(d.kept_tokens.begin(), d.kept_tokens.end());
            bound += uniq.size() * (uniq.size() - 1) / 2;
        }
        CHECK(m.nnz() <= bound);
        for (const auto& [i, j, w] : m.entries()) {
            CHECK(i < j);
            CHECK(w >= 1.0);
            CHECK(w <= static_cast<double>(docs.size()));
            CHECK(w == std::floor(w));  // integral in doc_binary mode
            CHECK(m.weight(j, i) == w);
        }

        // permuting the document list does not change the matrix
        std::vector<TokenDoc> shuffled = docs;
        for (std::size_t i = shuffled.size(); i > 1; --i)
            std::swap(shuffled[i - 1], shuffled[rng.below(i)]);
        const CoocMatrix m2 = build_cooc(shuffled, v, CoocMode::kDocBinary);
        CHECK(m2 == m);
    }
}
