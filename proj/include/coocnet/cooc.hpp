#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "coocnet/csv.hpp"
#include "coocnet/errors.hpp"
#include "coocnet/num_format.hpp"
#include "coocnet/tokenize.hpp"

namespace coocnet {

// Bijective word <-> dense id map; ids follow first occurrence over the
// document stream.
class Vocabulary {
  public:
    std::uint32_t add_or_get(const std::string& word) {
        auto [it, inserted] =
            word_to_id_.emplace(word, static_cast<std::uint32_t>(id_to_word_.size()));
        if (inserted) id_to_word_.push_back(word);
        return it->second;
    }

    std::optional<std::uint32_t> id_of(const std::string& word) const {
        auto it = word_to_id_.find(word);
        if (it == word_to_id_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& word_of(std::uint32_t id) const { return id_to_word_.at(id); }
    std::uint32_t size() const { return static_cast<std::uint32_t>(id_to_word_.size()); }
    const std::vector<std::string>& words() const { return id_to_word_; }

    friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
        return a.id_to_word_ == b.id_to_word_;
    }

  private:
    std::unordered_map<std::string, std::uint32_t> word_to_id_;
    std::vector<std::string> id_to_word_;
};

// min_df: a word needs kept-token presence in at least that many documents
// to enter the vocabulary.
inline Vocabulary build_vocab(const std::vector<TokenDoc>& docs,
                              std::size_t min_df = 1) {
    Vocabulary vocab;
    if (min_df <= 1) {
        for (const auto& doc : docs)
            for (const auto& tok : doc.kept_tokens) vocab.add_or_get(tok);
        return vocab;
    }
    std::unordered_map<std::string, std::size_t> df;
    for (const auto& doc : docs) {
        std::unordered_set<std::string> seen;
        for (const auto& tok : doc.kept_tokens)
            if (seen.insert(tok).second) ++df[tok];
    }
    for (const auto& doc : docs)
        for (const auto& tok : doc.kept_tokens)
            if (df.at(tok) >= min_df) vocab.add_or_get(tok);
    return vocab;
}

enum class CoocMode { kDocBinary, kPairMin, kPairProduct };

inline const char* to_string(CoocMode mode) {
    switch (mode) {
        case CoocMode::kDocBinary: return "doc_binary";
        case CoocMode::kPairMin: return "pair_min";
        case CoocMode::kPairProduct: return "pair_product";
    }
    return "doc_binary";
}

inline std::optional<CoocMode> cooc_mode_from_string(const std::string& s) {
    if (s == "doc_binary") return CoocMode::kDocBinary;
    if (s == "pair_min") return CoocMode::kPairMin;
    if (s == "pair_product") return CoocMode::kPairProduct;
    return std::nullopt;
}

// Sparse symmetric document-level co-occurrence matrix. Each unordered pair
// is stored once with i < j; the diagonal is always empty.
class CoocMatrix {
  public:
    CoocMatrix(std::uint32_t vocab_size, CoocMode mode)
        : vocab_size_(vocab_size), mode_(mode) {}

    std::uint32_t vocab_size() const { return vocab_size_; }
    CoocMode mode() const { return mode_; }

    void add(std::uint32_t i, std::uint32_t j, double w) {
        if (i == j) throw DataError("co-occurrence matrix has a zero diagonal");
        weights_[key(i, j)] += w;
    }

    double weight(std::uint32_t i, std::uint32_t j) const {
        if (i == j) return 0.0;
        auto it = weights_.find(key(i, j));
        return it == weights_.end() ? 0.0 : it->second;
    }

    std::size_t nnz() const { return weights_.size(); }

    // (i, j, weight) with i < j, sorted by (i, j).
    std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> entries() const {
        std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> out;
        out.reserve(weights_.size());
        for (const auto& [k, w] : weights_)
            out.emplace_back(static_cast<std::uint32_t>(k >> 32),
                             static_cast<std::uint32_t>(k & 0xFFFFFFFFu), w);
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const CoocMatrix& a, const CoocMatrix& b) {
        return a.vocab_size_ == b.vocab_size_ && a.weights_ == b.weights_;
    }

  private:
    static std::uint64_t key(std::uint32_t i, std::uint32_t j) {
        if (i > j) std::swap(i, j);
        return (static_cast<std::uint64_t>(i) << 32) | j;
    }

    std::uint32_t vocab_size_;
    CoocMode mode_;
    std::unordered_map<std::uint64_t, double> weights_;
};

// Per document, every unordered pair of distinct vocabulary words present
// gains: 1 (doc_binary), min(tf_i, tf_j) (pair_min), or tf_i*tf_j
// (pair_product). `skip_missing` tolerates kept tokens pruned from the
// vocabulary by min_df.
inline CoocMatrix build_cooc(const std::vector<TokenDoc>& docs,
                             const Vocabulary& vocab, CoocMode mode,
                             bool skip_missing = false) {
    CoocMatrix matrix(vocab.size(), mode);
    std::map<std::uint32_t, std::uint64_t> tf;
    for (const auto& doc : docs) {
        tf.clear();
        for (const auto& tok : doc.kept_tokens) {
            auto id = vocab.id_of(tok);
            if (!id) {
                if (skip_missing) continue;
                throw DataError("kept token not in vocabulary: " + tok);
            }
            ++tf[*id];
        }
        for (auto a = tf.begin(); a != tf.end(); ++a) {
            auto b = a;
            for (++b; b != tf.end(); ++b) {
                double w = 1.0;
                if (mode == CoocMode::kPairMin)
                    w = static_cast<double>(std::min(a->second, b->second));
                else if (mode == CoocMode::kPairProduct)
                    w = static_cast<double>(a->second) * static_cast<double>(b->second);
                matrix.add(a->first, b->first, w);
            }
        }
    }
    return matrix;
}

inline void matrix_to_csv(const CoocMatrix& matrix, const Vocabulary& vocab,
                          std::ostream& out) {
    out << "word_i,word_j,weight\n";
    for (const auto& [i, j, w] : matrix.entries())
        out << csv::quote(vocab.word_of(i)) << ',' << csv::quote(vocab.word_of(j))
            << ',' << format_double(w) << "\n";
}

inline void matrix_to_csv(const CoocMatrix& matrix, const Vocabulary& vocab,
                          const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write matrix CSV: " + path);
    matrix_to_csv(matrix, vocab, out);
}

inline void save_vocab_csv(const Vocabulary& vocab, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write vocabulary CSV: " + path);
    out << "id,word\n";
    for (std::uint32_t i = 0; i < vocab.size(); ++i)
        out << i << ',' << csv::quote(vocab.word_of(i)) << "\n";
}

inline Vocabulary load_vocab_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open vocabulary CSV: " + path);
    std::size_t line_no = 0;
    auto header = csv::read_record(in, line_no);
    if (!header || *header != std::vector<std::string>{"id", "word"})
        throw DataError("vocabulary CSV header must be id,word: " + path);
    Vocabulary vocab;
    while (auto rec = csv::read_record(in, line_no)) {
        if (rec->size() == 1 && (*rec)[0].empty()) continue;
        if (rec->size() != 2)
            throw DataError("vocabulary CSV line " + std::to_string(line_no) +
                            ": expected 2 fields");
        const std::uint32_t id = vocab.add_or_get((*rec)[1]);
        if (std::to_string(id) != (*rec)[0])
            throw DataError("vocabulary CSV ids must be dense and in order at line " +
                            std::to_string(line_no));
    }
    return vocab;
}

// Reads a `word_i,word_j,weight` CSV back against a known vocabulary.
inline CoocMatrix matrix_from_csv(const std::string& path, const Vocabulary& vocab,
                                  CoocMode mode = CoocMode::kDocBinary) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open matrix CSV: " + path);
    std::size_t line_no = 0;
    auto header = csv::read_record(in, line_no);
    if (!header ||
        *header != std::vector<std::string>{"word_i", "word_j", "weight"})
        throw DataError("matrix CSV header must be word_i,word_j,weight: " + path);
    CoocMatrix matrix(vocab.size(), mode);
    while (auto rec = csv::read_record(in, line_no)) {
        if (rec->size() == 1 && (*rec)[0].empty()) continue;
        if (rec->size() != 3)
            throw DataError("matrix CSV line " + std::to_string(line_no) +
                            ": expected 3 fields");
        auto i = vocab.id_of((*rec)[0]);
        auto j = vocab.id_of((*rec)[1]);
        if (!i || !j)
            throw DataError("matrix CSV line " + std::to_string(line_no) +
                            ": word not in vocabulary");
        double w = 0.0;
        try {
            w = std::stod((*rec)[2]);
        } catch (const std::exception&) {
            throw DataError("matrix CSV line " + std::to_string(line_no) +
                            ": bad weight '" + (*rec)[2] + "'");
        }
        matrix.add(*i, *j, w);
    }
    return matrix;
}

}  // namespace coocnet
