#pragma once

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mxent/multiplex.hpp"

namespace mxent {

// Edge-list text format: whitespace-delimited, one edge per line, '#'
// starts a comment. Two column orders are in the wild; the hosted
// multiplex collections use layer-first.
//
//   layer-first:  layer src dst [weight]
//   src-first:    src dst layer [weight]
//
// Writer-emitted "#!node L" / "#!layer L" directive comments carry isolated
// nodes and empty layers, so every network round-trips exactly. Foreign
// parsers see ordinary comments; foreign files simply have none.
enum class ColumnOrder { LayerFirst, SrcFirst };

struct EdgeListFormat {
    ColumnOrder order = ColumnOrder::LayerFirst;
    bool directed = false;
};

class ParseError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

inline double parse_weight(const std::string& token, const std::string& where) {
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        throw ParseError(where + ": non-numeric weight '" + token + "'");
    return value;
}

inline std::string format_weight(double w) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, w);
    return std::string(buf, ptr);
}

}  // namespace detail

inline MultiplexNetwork parse_multiplex_edgelist(std::istream& in, const EdgeListFormat& fmt,
                                                 const std::string& source_name) {
    MultiplexNetwork net(fmt.directed);
    std::string line;
    std::size_t line_no = 0;
    bool saw_data = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();

        const auto start = line.find_first_not_of(" \t");
        if (start != std::string::npos && line.compare(start, 2, "#!") == 0) {
            std::istringstream directive(line.substr(start + 2));
            std::string kind, label;
            directive >> kind >> label;
            if (kind == "node" && !label.empty()) {
                net.add_node(label);
                saw_data = true;
            } else if (kind == "layer" && !label.empty()) {
                net.add_layer(label);
                saw_data = true;
            }
            continue;
        }

        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);

        std::istringstream fields(line);
        std::vector<std::string> tokens;
        std::string token;
        while (fields >> token) tokens.push_back(token);
        if (tokens.empty()) continue;

        const std::string where = source_name + ":" + std::to_string(line_no);
        if (tokens.size() < 3 || tokens.size() > 4)
            throw ParseError(where + ": expected 3 or 4 fields, got " +
                             std::to_string(tokens.size()));

        const double weight = tokens.size() == 4 ? detail::parse_weight(tokens[3], where) : 1.0;
        if (fmt.order == ColumnOrder::LayerFirst)
            net.add_edge(tokens[1], tokens[2], tokens[0], weight);
        else
            net.add_edge(tokens[0], tokens[1], tokens[2], weight);
        saw_data = true;
    }
    if (!saw_data)
        std::cerr << "warning: " << source_name << ": empty edge list\n";
    return net;
}

inline MultiplexNetwork parse_multiplex_edgelist(const std::string& path,
                                                 const EdgeListFormat& fmt = {}) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open edge list: " + path);
    return parse_multiplex_edgelist(in, fmt, path);
}

/// Deterministic line order: layer id, then canonical pair, ascending.
inline void write_multiplex_edgelist(const MultiplexNetwork& net, std::ostream& out,
                                     const EdgeListFormat& fmt = {}) {
    out << "# multiplex edge list\n";
    out << "# columns: "
        << (fmt.order == ColumnOrder::LayerFirst ? "layer src dst weight"
                                                 : "src dst layer weight")
        << "\n";

    std::vector<bool> isolated(net.num_nodes(), true);
    for (layer_index l = 0; l < net.num_layers(); ++l) {
        for (const auto& [key, w] : net.layer_edges(l)) {
            const auto [u, v] = detail::unpack_pair(key);
            isolated[u] = false;
            isolated[v] = false;
        }
    }
    for (node_index i = 0; i < net.num_nodes(); ++i)
        if (isolated[i]) out << "#!node " << net.node_label(i) << "\n";
    for (layer_index l = 0; l < net.num_layers(); ++l)
        if (net.layer_edge_count(l) == 0) out << "#!layer " << net.layer_label(l) << "\n";

    for (layer_index l = 0; l < net.num_layers(); ++l) {
        for (const auto& e : net.sorted_edges(l)) {
            const std::string& lu = net.node_label(e.u);
            const std::string& lv = net.node_label(e.v);
            const std::string& ll = net.layer_label(l);
            const std::string lw = detail::format_weight(e.weight);
            if (fmt.order == ColumnOrder::LayerFirst)
                out << ll << ' ' << lu << ' ' << lv << ' ' << lw << '\n';
            else
                out << lu << ' ' << lv << ' ' << ll << ' ' << lw << '\n';
        }
    }
}

inline void write_multiplex_edgelist(const MultiplexNetwork& net, const std::string& path,
                                     const EdgeListFormat& fmt = {}) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_multiplex_edgelist(net, out, fmt);
    if (!out) throw std::runtime_error("write failed: " + path);
}

struct NetworkSummary {
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t layers = 0;
    double mean_degree = 0.0;
    int components = 0;
};

inline NetworkSummary summarize(const MultiplexNetwork& net) {
    NetworkSummary s;
    s.nodes = net.num_nodes();
    s.edges = net.num_edges();
    s.layers = net.num_layers();
    if (s.nodes == 0) {
        std::cerr << "warning: mean degree undefined for 0 nodes, reporting 0\n";
        s.mean_degree = 0.0;
    } else {
        s.mean_degree = 2.0 * static_cast<double>(s.edges) / static_cast<double>(s.nodes);
    }
    s.components = net.connected_components().count;
    return s;
}

}  // namespace mxent
