#pragma once

#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "coocnet/community.hpp"
#include "coocnet/csv.hpp"
#include "coocnet/errors.hpp"
#include "coocnet/graph.hpp"
#include "coocnet/metrics.hpp"
#include "coocnet/num_format.hpp"

namespace coocnet {

inline std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

// GraphML with node attributes `label`, optional `community`, one per
// centrality vector; edges carry `weight`. Output is deterministic: nodes
// by id, edges by (source, target).
inline void export_graphml(const CoGraph& g, const Partition* partition,
                           const std::vector<CentralityVector>& centralities,
                           std::ostream& out) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n";
    out << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n";
    if (partition)
        out << "  <key id=\"community\" for=\"node\" attr.name=\"community\" attr.type=\"int\"/>\n";
    for (const auto& cv : centralities)
        out << "  <key id=\"" << to_string(cv.kind) << "\" for=\"node\" attr.name=\""
            << to_string(cv.kind) << "\" attr.type=\"double\"/>\n";
    out << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n";
    out << "  <graph id=\"G\" edgedefault=\"undirected\">\n";
    for (NodeId v = 0; v < g.n(); ++v) {
        out << "    <node id=\"n" << v << "\">\n";
        out << "      <data key=\"label\">" << xml_escape(g.label(v)) << "</data>\n";
        if (partition)
            out << "      <data key=\"community\">" << partition->assignment[v]
                << "</data>\n";
        for (const auto& cv : centralities)
            out << "      <data key=\"" << to_string(cv.kind) << "\">"
                << format_double(cv.values[v]) << "</data>\n";
        out << "    </node>\n";
    }
    for (const auto& [i, j, w] : g.edges()) {
        out << "    <edge source=\"n" << i << "\" target=\"n" << j << "\">\n";
        out << "      <data key=\"weight\">" << format_double(w) << "</data>\n";
        out << "    </edge>\n";
    }
    out << "  </graph>\n";
    out << "</graphml>\n";
}

inline void export_graphml(const CoGraph& g, const Partition* partition,
                           const std::vector<CentralityVector>& centralities,
                           const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write GraphML: " + path);
    export_graphml(g, partition, centralities, out);
}

// GEXF 1.2, same content as the GraphML export.
inline void export_gexf(const CoGraph& g, const Partition* partition,
                        const std::vector<CentralityVector>& centralities,
                        std::ostream& out) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<gexf xmlns=\"http://www.gexf.net/1.2draft\" version=\"1.2\">\n";
    out << "  <graph mode=\"static\" defaultedgetype=\"undirected\">\n";
    out << "    <attributes class=\"node\">\n";
    int attr_id = 0;
    std::optional<int> community_attr;
    if (partition) {
        community_attr = attr_id;
        out << "      <attribute id=\"" << attr_id++
            << "\" title=\"community\" type=\"integer\"/>\n";
    }
    std::vector<int> centrality_attr;
    for (const auto& cv : centralities) {
        centrality_attr.push_back(attr_id);
        out << "      <attribute id=\"" << attr_id++ << "\" title=\""
            << to_string(cv.kind) << "\" type=\"double\"/>\n";
    }
    out << "    </attributes>\n";
    out << "    <nodes>\n";
    for (NodeId v = 0; v < g.n(); ++v) {
        out << "      <node id=\"" << v << "\" label=\"" << xml_escape(g.label(v))
            << "\">\n";
        out << "        <attvalues>\n";
        if (partition)
            out << "          <attvalue for=\"" << *community_attr << "\" value=\""
                << partition->assignment[v] << "\"/>\n";
        for (std::size_t c = 0; c < centralities.size(); ++c)
            out << "          <attvalue for=\"" << centrality_attr[c] << "\" value=\""
                << format_double(centralities[c].values[v]) << "\"/>\n";
        out << "        </attvalues>\n";
        out << "      </node>\n";
    }
    out << "    </nodes>\n";
    out << "    <edges>\n";
    std::size_t edge_id = 0;
    for (const auto& [i, j, w] : g.edges())
        out << "      <edge id=\"" << edge_id++ << "\" source=\"" << i
            << "\" target=\"" << j << "\" weight=\"" << format_double(w) << "\"/>\n";
    out << "    </edges>\n";
    out << "  </graph>\n";
    out << "</gexf>\n";
}

inline void export_gexf(const CoGraph& g, const Partition* partition,
                        const std::vector<CentralityVector>& centralities,
                        const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write GEXF: " + path);
    export_gexf(g, partition, centralities, out);
}

// `word,value` CSV sorted by value descending, ties by ascending word.
inline void save_centrality_csv(const CoGraph& g, const CentralityVector& cv,
                                std::ostream& out) {
    std::vector<std::pair<std::string, double>> rows;
    rows.reserve(g.n());
    for (NodeId v = 0; v < g.n(); ++v) rows.emplace_back(g.label(v), cv.values[v]);
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    out << "word,value\n";
    for (const auto& [word, value] : rows)
        out << csv::quote(word) << ',' << format_double(value) << "\n";
}

inline void save_partition_csv(const CoGraph& g, const Partition& p,
                               std::ostream& out) {
    std::vector<std::pair<std::uint32_t, std::string>> rows;
    rows.reserve(g.n());
    for (NodeId v = 0; v < g.n(); ++v)
        rows.emplace_back(p.assignment[v], g.label(v));
    std::sort(rows.begin(), rows.end());
    out << "word,community_id\n";
    for (const auto& [cid, word] : rows)
        out << csv::quote(word) << ',' << cid << "\n";
}

}  // namespace coocnet
