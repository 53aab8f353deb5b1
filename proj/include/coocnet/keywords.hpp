#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "coocnet/csv.hpp"
#include "coocnet/errors.hpp"
#include "coocnet/metrics.hpp"
#include "coocnet/num_format.hpp"

namespace coocnet {

struct KeywordRow {
    std::size_t rank = 0;
    std::string word;
    std::string metric;
    double value = 0.0;
};

struct KeywordTable {
    std::vector<KeywordRow> rows;
    std::string channel;      // source corpus / channel tag, may be empty
    std::string provenance;   // pipeline config hash, may be empty
};

// Top-k entries by value descending, ties by ascending word (codepoint
// order, which for UTF-8 is plain byte order).
inline KeywordTable top_keywords(const std::vector<std::pair<std::string, double>>& scores,
                                 const std::string& metric, std::size_t k) {
    if (k < 1) throw UsageError("top-k must be >= 1");
    std::vector<std::pair<std::string, double>> sorted = scores;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (sorted.size() > k) sorted.resize(k);
    KeywordTable table;
    table.rows.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        table.rows.push_back({i + 1, sorted[i].first, metric, sorted[i].second});
    return table;
}

inline KeywordTable top_keywords(const CentralityVector& cv,
                                 const std::vector<std::string>& labels,
                                 std::size_t k) {
    if (cv.values.size() != labels.size())
        throw DataError("centrality/label size mismatch");
    std::vector<std::pair<std::string, double>> scores;
    scores.reserve(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        scores.emplace_back(labels[i], cv.values[i]);
    return top_keywords(scores, to_string(cv.kind), k);
}

// Markdown and CSV emitters carry identical rows; values print at 4
// decimal places.
inline std::string keyword_table_markdown(const KeywordTable& table) {
    std::ostringstream out;
    out << "| Rank | Word | Metric | Value |\n";
    out << "|-----:|------|--------|------:|\n";
    for (const auto& row : table.rows)
        out << "| " << row.rank << " | " << row.word << " | " << row.metric
            << " | " << format_fixed4(row.value) << " |\n";
    return out.str();
}

inline std::string keyword_table_csv(const KeywordTable& table) {
    std::ostringstream out;
    out << "rank,word,metric,value\n";
    for (const auto& row : table.rows)
        out << row.rank << ',' << csv::quote(row.word) << ',' << row.metric << ','
            << format_fixed4(row.value) << "\n";
    return out.str();
}

}  // namespace coocnet
