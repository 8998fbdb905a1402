#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mxent/multiplex.hpp"
#include "mxent/rng.hpp"

namespace mxent {

struct GeneratorConfig {
    std::uint64_t nodes = 1;   // v
    std::uint32_t layers = 1;  // k
    double dropout = 0.0;      // d; edge creation probability is p = 1 - d
    std::uint64_t seed = 0;
};

inline std::uint64_t pair_count(std::uint64_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Upper bound on the edge count of any generated network: k * C(v, 2),
/// a full clique on every layer.
inline std::uint64_t theoretical_edge_bound(std::uint64_t v, std::uint64_t k) {
    if (v < 1 || k < 1) throw std::invalid_argument("theoretical_edge_bound: v, k >= 1");
    return k * pair_count(v);
}

namespace detail {
// First linear index of row i under lexicographic pair order (i < j).
inline std::uint64_t pair_row_offset(std::uint64_t i, std::uint64_t n) {
    return i * (2 * n - i - 1) / 2;
}
}  // namespace detail

/// Linear index -> unordered pair (i, j), i < j, lexicographic order over
/// the C(n,2) pairs of {0..n-1}.
inline std::pair<std::uint64_t, std::uint64_t> pair_index_to_nodes(std::uint64_t idx,
                                                                   std::uint64_t n) {
    if (n < 2 || idx >= pair_count(n))
        throw std::out_of_range("pair_index_to_nodes: index out of range");
    // invert the row offset's quadratic, then fix up rounding
    const double nn = static_cast<double>(n);
    const double disc = (2.0 * nn - 1.0) * (2.0 * nn - 1.0) - 8.0 * static_cast<double>(idx);
    double guess = std::floor((2.0 * nn - 1.0 - std::sqrt(disc)) / 2.0);
    std::uint64_t i = guess <= 0.0 ? 0 : static_cast<std::uint64_t>(guess);
    if (i > n - 2) i = n - 2;
    while (i > 0 && detail::pair_row_offset(i, n) > idx) --i;
    while (i + 1 <= n - 2 && detail::pair_row_offset(i + 1, n) <= idx) ++i;
    const std::uint64_t j = idx - detail::pair_row_offset(i, n) + i + 1;
    return {i, j};
}

/// Inverse of pair_index_to_nodes.
inline std::uint64_t node_pair_to_index(std::uint64_t i, std::uint64_t j, std::uint64_t n) {
    if (i >= j || j >= n) throw std::out_of_range("node_pair_to_index: need i < j < n");
    return detail::pair_row_offset(i, n) + (j - i - 1);
}

/// Per node: a uniformly sized (1..k), uniformly chosen subset of layers.
inline std::vector<std::vector<layer_index>> assign_layers(std::uint64_t v, std::uint32_t k,
                                                           SplitMix64& rng) {
    if (v < 1 || k < 1) throw std::invalid_argument("assign_layers: v, k >= 1");
    std::vector<std::vector<layer_index>> assignment(v);
    std::vector<layer_index> pool(k);
    for (std::uint64_t node = 0; node < v; ++node) {
        std::iota(pool.begin(), pool.end(), layer_index{0});
        const auto size = static_cast<std::uint32_t>(1 + rng.next_below(k));
        for (std::uint32_t t = 0; t < size; ++t) {
            const auto pick = t + static_cast<std::uint32_t>(rng.next_below(k - t));
            std::swap(pool[t], pool[pick]);
        }
        assignment[node].assign(pool.begin(), pool.begin() + size);
        std::sort(assignment[node].begin(), assignment[node].end());
    }
    return assignment;
}

// Bernoulli(p) subset of the C(m,2) potential pairs of layer_nodes, without
// enumerating them: jump geometric gap lengths over the linear pair index,
// touching only selected pairs. Expected work O(p * C(m,2) + 1); the full
// clique is materialized only at p = 1.
inline std::vector<std::pair<node_index, node_index>> sample_layer_edges(
    const std::vector<node_index>& layer_nodes, double p, SplitMix64& rng,
    std::uint64_t* pairs_examined = nullptr) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("sample_layer_edges: p outside [0,1]");

    std::vector<std::pair<node_index, node_index>> edges;
    const auto m = static_cast<std::uint64_t>(layer_nodes.size());
    const std::uint64_t total = pair_count(m);
    if (total == 0 || p == 0.0) return edges;

    const auto emit = [&](std::uint64_t idx) {
        const auto [a, b] = pair_index_to_nodes(idx, m);
        edges.emplace_back(layer_nodes[a], layer_nodes[b]);
        if (pairs_examined) ++*pairs_examined;
    };

    if (p == 1.0) {
        edges.reserve(total);
        for (std::uint64_t idx = 0; idx < total; ++idx) emit(idx);
        return edges;
    }

    const double log_q = std::log1p(-p);  // log(1 - p) < 0
    std::uint64_t pos = 0;
    for (;;) {
        const double u = 1.0 - rng.next_double();  // (0, 1]
        const double gap = std::floor(std::log(u) / log_q);
        if (gap >= static_cast<double>(total - pos)) break;
        pos += static_cast<std::uint64_t>(gap);
        emit(pos);
        if (++pos >= total) break;
    }
    return edges;
}

struct GeneratedNetwork {
    MultiplexNetwork network;
    GeneratorConfig config;           // echo of the inputs
    std::uint64_t pairs_examined = 0; // node pairs touched during sampling
};

/// Random multiplex: random layer assignment per node, then each layer's
/// potential clique thinned by dropout d. Deterministic for a fixed seed.
inline GeneratedNetwork generate(const GeneratorConfig& cfg) {
    if (cfg.nodes < 1) throw std::invalid_argument("generate: nodes must be >= 1");
    if (cfg.layers < 1) throw std::invalid_argument("generate: layers must be >= 1");
    if (!(cfg.dropout >= 0.0 && cfg.dropout <= 1.0))
        throw std::invalid_argument("generate: dropout outside [0,1]");

    GeneratedNetwork out{MultiplexNetwork(false), cfg, 0};
    MultiplexNetwork& net = out.network;
    for (std::uint64_t i = 0; i < cfg.nodes; ++i) net.add_node(std::to_string(i));
    for (std::uint32_t l = 0; l < cfg.layers; ++l) net.add_layer(std::to_string(l));

    SplitMix64 assignment_rng(substream_seed(cfg.seed, 0));
    const auto assignment = assign_layers(cfg.nodes, cfg.layers, assignment_rng);

    std::vector<std::vector<node_index>> layer_members(cfg.layers);
    for (std::uint64_t node = 0; node < cfg.nodes; ++node)
        for (const layer_index l : assignment[node])
            layer_members[l].push_back(static_cast<node_index>(node));

    const double p = 1.0 - cfg.dropout;
    for (std::uint32_t l = 0; l < cfg.layers; ++l) {
        SplitMix64 layer_rng(substream_seed(cfg.seed, 1 + l));
        for (const auto& [u, v] :
             sample_layer_edges(layer_members[l], p, layer_rng, &out.pairs_examined))
            net.add_edge(u, v, l, 1.0);
    }
    return out;
}

}  // namespace mxent
