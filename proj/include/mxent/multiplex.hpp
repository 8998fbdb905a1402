#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mxent/union_find.hpp"

namespace mxent {

using node_index = std::uint32_t;
using layer_index = std::uint32_t;

struct Edge {
    node_index u;
    node_index v;
    layer_index layer;
    double weight;
};

namespace detail {

inline std::uint64_t pack_pair(node_index u, node_index v) {
    return (static_cast<std::uint64_t>(u) << 32) | v;
}

inline std::pair<node_index, node_index> unpack_pair(std::uint64_t key) {
    return {static_cast<node_index>(key >> 32),
            static_cast<node_index>(key & 0xffffffffULL)};
}

}  // namespace detail

/// Union of all layers' edges, no layer or weight information.
struct SimpleGraph {
    std::size_t num_nodes = 0;
    std::vector<std::pair<node_index, node_index>> edges;  // canonical, sorted, unique
};

/// Partition of the node set by connectivity in the aggregated graph.
/// Component ids are assigned in order of each component's smallest node.
struct ComponentDecomposition {
    std::vector<int> component_of;
    int count = 0;
};

// Layered edge sets over one shared node identity. Node and layer ids are
// dense indices in first-appearance order, kept in bijection with external
// string labels. Undirected networks store each pair canonically (u <= v)
// and deduplicate; directed ones keep arc order. Everything downstream of
// the layer co-occurrence counts works on unordered pairs either way.
class MultiplexNetwork {
public:
    explicit MultiplexNetwork(bool directed = false) : directed_(directed) {}

    node_index add_node(const std::string& label) {
        auto it = node_ids_.find(label);
        if (it != node_ids_.end()) return it->second;
        const auto id = static_cast<node_index>(node_labels_.size());
        node_labels_.push_back(label);
        node_ids_.emplace(label, id);
        return id;
    }

    layer_index add_layer(const std::string& label) {
        auto it = layer_ids_.find(label);
        if (it != layer_ids_.end()) return it->second;
        const auto id = static_cast<layer_index>(layer_labels_.size());
        layer_labels_.push_back(label);
        layer_ids_.emplace(label, id);
        edges_.emplace_back();
        return id;
    }

    /// Inserts the edge in canonical form; duplicates are ignored (first
    /// weight wins).
    void add_edge(node_index u, node_index v, layer_index layer, double weight = 1.0) {
        if (u >= num_nodes() || v >= num_nodes())
            throw std::out_of_range("add_edge: node index out of range");
        if (layer >= num_layers())
            throw std::out_of_range("add_edge: layer index out of range");
        if (!directed_ && u > v) std::swap(u, v);
        edges_[layer].try_emplace(detail::pack_pair(u, v), weight);
    }

    void add_edge(const std::string& u, const std::string& v, const std::string& layer,
                  double weight = 1.0) {
        const node_index ui = add_node(u);
        const node_index vi = add_node(v);
        const layer_index li = add_layer(layer);
        add_edge(ui, vi, li, weight);
    }

    bool directed() const { return directed_; }
    std::size_t num_nodes() const { return node_labels_.size(); }
    std::size_t num_layers() const { return layer_labels_.size(); }

    std::size_t num_edges() const {
        std::size_t total = 0;
        for (const auto& layer : edges_) total += layer.size();
        return total;
    }

    std::size_t layer_edge_count(layer_index l) const { return edges_.at(l).size(); }

    const std::string& node_label(node_index i) const { return node_labels_.at(i); }
    const std::string& layer_label(layer_index l) const { return layer_labels_.at(l); }

    const std::unordered_map<std::uint64_t, double>& layer_edges(layer_index l) const {
        return edges_.at(l);
    }

    /// Edges of one layer ordered by (u, v).
    std::vector<Edge> sorted_edges(layer_index l) const {
        std::vector<Edge> out;
        out.reserve(edges_.at(l).size());
        for (const auto& [key, w] : edges_.at(l)) {
            const auto [u, v] = detail::unpack_pair(key);
            out.push_back({u, v, l, w});
        }
        std::sort(out.begin(), out.end(), [](const Edge& a, const Edge& b) {
            return std::tie(a.u, a.v) < std::tie(b.u, b.v);
        });
        return out;
    }

    SimpleGraph aggregate_graph() const {
        SimpleGraph g;
        g.num_nodes = num_nodes();
        std::vector<std::uint64_t> keys;
        for (layer_index l = 0; l < num_layers(); ++l) {
            for (const auto& [key, w] : edges_[l]) {
                auto [u, v] = detail::unpack_pair(key);
                if (u > v) std::swap(u, v);
                keys.push_back(detail::pack_pair(u, v));
            }
        }
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        g.edges.reserve(keys.size());
        for (const auto key : keys) g.edges.push_back(detail::unpack_pair(key));
        return g;
    }

    ComponentDecomposition connected_components() const {
        UnionFind uf(num_nodes());
        for (const auto& layer : edges_) {
            for (const auto& [key, w] : layer) {
                const auto [u, v] = detail::unpack_pair(key);
                uf.unite(u, v);
            }
        }
        ComponentDecomposition comps;
        comps.component_of.assign(num_nodes(), -1);
        std::unordered_map<std::size_t, int> id_of_root;
        for (node_index i = 0; i < num_nodes(); ++i) {
            const std::size_t root = uf.find(i);
            auto it = id_of_root.find(root);
            if (it == id_of_root.end())
                it = id_of_root.emplace(root, comps.count++).first;
            comps.component_of[i] = it->second;
        }
        return comps;
    }

    /// Sub-network on one component: its nodes (re-indexed in ascending
    /// order) and all their edges; layers left with no edge are dropped.
    MultiplexNetwork induce_component(const ComponentDecomposition& comps, int cid) const {
        if (cid < 0 || cid >= comps.count)
            throw std::out_of_range("induce_component: unknown component id");
        MultiplexNetwork sub(directed_);
        std::vector<node_index> remap(num_nodes(), 0);
        for (node_index i = 0; i < num_nodes(); ++i)
            if (comps.component_of[i] == cid) remap[i] = sub.add_node(node_labels_[i]);
        for (layer_index l = 0; l < num_layers(); ++l) {
            bool layer_added = false;
            for (const auto& edge : sorted_edges(l)) {
                if (comps.component_of[edge.u] != cid) continue;
                if (!layer_added) {
                    sub.add_layer(layer_labels_[l]);
                    layer_added = true;
                }
                sub.add_edge(remap[edge.u], remap[edge.v],
                             static_cast<layer_index>(sub.num_layers() - 1), edge.weight);
            }
        }
        return sub;
    }

    MultiplexNetwork induce_component(int cid) const {
        return induce_component(connected_components(), cid);
    }

    /// All components at once, partitioning nodes and edges in a single
    /// pass instead of rescanning the network per component. Element cid
    /// equals induce_component(comps, cid).
    std::vector<MultiplexNetwork> induce_all_components(
        const ComponentDecomposition& comps) const {
        std::vector<MultiplexNetwork> subs(static_cast<std::size_t>(comps.count),
                                           MultiplexNetwork(directed_));
        std::vector<node_index> remap(num_nodes(), 0);
        for (node_index i = 0; i < num_nodes(); ++i)
            remap[i] = subs[comps.component_of[i]].add_node(node_labels_[i]);

        // bucket edges by (component, layer), preserving layer order
        std::vector<std::vector<std::vector<Edge>>> buckets(
            static_cast<std::size_t>(comps.count),
            std::vector<std::vector<Edge>>(num_layers()));
        for (layer_index l = 0; l < num_layers(); ++l)
            for (const auto& [key, w] : edges_[l]) {
                const auto [u, v] = detail::unpack_pair(key);
                buckets[comps.component_of[u]][l].push_back({u, v, l, w});
            }
        for (int cid = 0; cid < comps.count; ++cid) {
            MultiplexNetwork& sub = subs[cid];
            for (layer_index l = 0; l < num_layers(); ++l) {
                if (buckets[cid][l].empty()) continue;
                const layer_index sub_layer = sub.add_layer(layer_labels_[l]);
                for (const auto& e : buckets[cid][l])
                    sub.add_edge(remap[e.u], remap[e.v], sub_layer, e.weight);
            }
        }
        return subs;
    }

private:
    bool directed_;
    std::vector<std::string> node_labels_;
    std::vector<std::string> layer_labels_;
    std::unordered_map<std::string, node_index> node_ids_;
    std::unordered_map<std::string, layer_index> layer_ids_;
    std::vector<std::unordered_map<std::uint64_t, double>> edges_;
};

// Equality as labeled networks: internal indices may differ (they depend on
// first-appearance order), labels and labeled edges may not.
inline bool operator==(const MultiplexNetwork& a, const MultiplexNetwork& b) {
    if (a.directed() != b.directed()) return false;
    if (a.num_nodes() != b.num_nodes() || a.num_layers() != b.num_layers()) return false;

    auto label_set = [](const MultiplexNetwork& n, bool nodes) {
        std::vector<std::string> out;
        if (nodes)
            for (node_index i = 0; i < n.num_nodes(); ++i) out.push_back(n.node_label(i));
        else
            for (layer_index l = 0; l < n.num_layers(); ++l) out.push_back(n.layer_label(l));
        std::sort(out.begin(), out.end());
        return out;
    };
    if (label_set(a, true) != label_set(b, true)) return false;
    if (label_set(a, false) != label_set(b, false)) return false;

    using Row = std::tuple<std::string, std::string, std::string, double>;
    auto edge_rows = [](const MultiplexNetwork& n) {
        std::vector<Row> rows;
        for (layer_index l = 0; l < n.num_layers(); ++l) {
            for (const auto& e : n.sorted_edges(l)) {
                std::string s = n.node_label(e.u);
                std::string t = n.node_label(e.v);
                if (!n.directed() && t < s) std::swap(s, t);
                rows.emplace_back(n.layer_label(l), s, t, e.weight);
            }
        }
        std::sort(rows.begin(), rows.end());
        return rows;
    };
    return edge_rows(a) == edge_rows(b);
}

inline bool operator!=(const MultiplexNetwork& a, const MultiplexNetwork& b) {
    return !(a == b);
}

}  // namespace mxent
