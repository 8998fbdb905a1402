#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mxent/csv.hpp"
#include "mxent/multiplex.hpp"
#include "mxent/union_find.hpp"

namespace mxent {

// Weighted co-occurrence graph over the layers: counts[i][j] is the number
// of node pairs carrying an edge in both layers, counts[i][i] the number of
// edges on the layer itself. Layers with no edges are not retained.
struct LayerInteractionNetwork {
    std::vector<layer_index> layers;                 // retained layers, ascending
    std::vector<std::vector<std::uint64_t>> counts;  // indexed by position in `layers`

    std::size_t size() const { return layers.size(); }
};

inline LayerInteractionNetwork build_lin(const MultiplexNetwork& net) {
    LayerInteractionNetwork lin;
    std::vector<std::size_t> position(net.num_layers(), 0);
    for (layer_index l = 0; l < net.num_layers(); ++l) {
        if (net.layer_edge_count(l) == 0) continue;
        position[l] = lin.layers.size();
        lin.layers.push_back(l);
    }
    if (lin.layers.empty()) throw std::invalid_argument("build_lin: no layers");

    const std::size_t k = lin.size();
    lin.counts.assign(k, std::vector<std::uint64_t>(k, 0));

    // Group edges by canonical node pair; a pair present in layer set S
    // increments every unordered {l, l'} within S, the diagonal included.
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> layers_of_pair;
    for (const layer_index l : lin.layers) {
        for (const auto& [key, w] : net.layer_edges(l)) {
            auto [u, v] = detail::unpack_pair(key);
            if (u > v) std::swap(u, v);  // directed nets: co-occurrence is unordered
            layers_of_pair[detail::pack_pair(u, v)].push_back(
                static_cast<std::uint32_t>(position[l]));
        }
    }
    for (auto& [key, positions] : layers_of_pair) {
        std::sort(positions.begin(), positions.end());
        positions.erase(std::unique(positions.begin(), positions.end()), positions.end());
        for (std::size_t a = 0; a < positions.size(); ++a) {
            for (std::size_t b = a; b < positions.size(); ++b) {
                ++lin.counts[positions[a]][positions[b]];
                if (a != b) ++lin.counts[positions[b]][positions[a]];
            }
        }
    }
    return lin;
}

/// Row-normalized overlap frequencies c[l][l'] = n[l][l'] / n[l][l].
/// Diagonal is exactly 1; generally not symmetric.
class OverlapMatrix {
public:
    OverlapMatrix() = default;
    explicit OverlapMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

    std::size_t size() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }

private:
    std::size_t n_ = 0;
    std::vector<double> values_;
};

inline OverlapMatrix build_overlap_matrix(const LayerInteractionNetwork& lin) {
    const std::size_t k = lin.size();
    OverlapMatrix c(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (lin.counts[i][i] == 0)
            throw std::invalid_argument("build_overlap_matrix: zero diagonal count");
        for (std::size_t j = 0; j < k; ++j)
            c(i, j) = static_cast<double>(lin.counts[i][j]) /
                      static_cast<double>(lin.counts[i][i]);
        c(i, i) = 1.0;
    }
    return c;
}

/// Overlap matrix restricted to a subset of LIN positions (a block).
inline OverlapMatrix overlap_submatrix(const LayerInteractionNetwork& lin,
                                       const std::vector<std::size_t>& members) {
    const std::size_t k = members.size();
    OverlapMatrix c(k);
    for (std::size_t i = 0; i < k; ++i) {
        const std::uint64_t diag = lin.counts[members[i]][members[i]];
        if (diag == 0) throw std::invalid_argument("overlap_submatrix: zero diagonal count");
        for (std::size_t j = 0; j < k; ++j)
            c(i, j) = static_cast<double>(lin.counts[members[i]][members[j]]) /
                      static_cast<double>(diag);
        c(i, i) = 1.0;
    }
    return c;
}

struct PowerIterationResult {
    double lambda = 0.0;
    std::vector<double> gamma;
    int iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

namespace detail {

inline void mat_vec(const OverlapMatrix& c, const std::vector<double>& x,
                    std::vector<double>& y) {
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += c(i, j) * x[j];
        y[i] = acc;
    }
}

inline double l2_norm(const std::vector<double>& x) {
    double acc = 0.0;
    for (const double v : x) acc += v * v;
    return std::sqrt(acc);
}

}  // namespace detail

// Dominant eigenpair of an overlap matrix by power iteration: uniform
// positive start vector, per-step L2 normalization, stop when successive
// iterates are closer than tol in L2. The matrix of a connected LIN block
// is primitive (positive diagonal, irreducible), so the iteration converges
// and the limit lies in the positive orthant.
inline PowerIterationResult power_iteration(const OverlapMatrix& c, double tol,
                                            int max_iter) {
    const std::size_t n = c.size();
    if (n == 0) throw std::invalid_argument("power_iteration: empty matrix");
    if (!(tol > 0.0)) throw std::invalid_argument("power_iteration: tol must be positive");
    if (max_iter < 1) throw std::invalid_argument("power_iteration: max_iter must be >= 1");

    PowerIterationResult result;
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> y(n);
    for (int it = 1; it <= max_iter; ++it) {
        detail::mat_vec(c, x, y);
        const double norm = detail::l2_norm(y);
        for (double& v : y) v /= norm;
        double dist2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double diff = y[i] - x[i];
            dist2 += diff * diff;
        }
        x.swap(y);
        result.iterations = it;
        result.residual = std::sqrt(dist2);
        if (result.residual < tol) {
            result.converged = true;
            break;
        }
    }

    double sum = 0.0;
    for (const double v : x) sum += v;
    if (sum < 0.0)
        for (double& v : x) v = -v;

    // lambda = x^T C x; clamp into the spectral bounds of overlap matrices
    // (unit diagonal, entries in [0,1] give 1 <= lambda <= n).
    detail::mat_vec(c, x, y);
    double lambda = 0.0;
    for (std::size_t i = 0; i < n; ++i) lambda += x[i] * y[i];
    result.lambda = std::clamp(lambda, 1.0, static_cast<double>(n));
    result.gamma = std::move(x);
    return result;
}

class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(int iterations, double residual)
        : std::runtime_error("power iteration did not converge after " +
                             std::to_string(iterations) +
                             " iterations (residual " + format_real(residual) + ")"),
          iterations_(iterations),
          residual_(residual) {}

    int iterations() const { return iterations_; }
    double residual() const { return residual_; }

private:
    int iterations_;
    double residual_;
};

inline std::pair<double, std::vector<double>> dominant_eigenpair(const OverlapMatrix& c,
                                                                 double tol = 1e-10,
                                                                 int max_iter = 100000) {
    PowerIterationResult r = power_iteration(c, tol, max_iter);
    if (!r.converged) throw NonConvergenceError(r.iterations, r.residual);
    return {r.lambda, std::move(r.gamma)};
}

/// Cosine similarity between gamma and the all-ones vector; 1 when the
/// layers' entanglement shares are perfectly balanced.
inline double homogeneity(const std::vector<double>& gamma) {
    if (gamma.empty()) throw std::invalid_argument("homogeneity: empty vector");
    double sum = 0.0;
    double norm2 = 0.0;
    for (const double v : gamma) {
        sum += v;
        norm2 += v * v;
    }
    if (norm2 == 0.0) throw std::invalid_argument("homogeneity: zero vector");
    const double h = sum / (std::sqrt(static_cast<double>(gamma.size())) * std::sqrt(norm2));
    return std::min(h, 1.0);
}

/// lambda / |L|; 1 when every layer fully overlaps every other.
inline double intensity(double lambda, std::size_t num_layers) {
    if (num_layers < 1) throw std::invalid_argument("intensity: need at least one layer");
    return lambda / static_cast<double>(num_layers);
}

// Homogeneity rescaled from its attainable range [1/sqrt(|L|), 1] onto
// [0, 1]. This mapping is the toolkit's own definition.
inline double normalized_homogeneity(double h, std::size_t num_layers) {
    if (num_layers <= 1) return 1.0;
    const double root = std::sqrt(static_cast<double>(num_layers));
    const double nh = (h * root - 1.0) / (root - 1.0);
    return std::clamp(nh, 0.0, 1.0);
}

/// Connected blocks of the LIN (positions with a positive off-diagonal
/// count are joined). Block ids follow each block's smallest position.
inline std::vector<int> lin_blocks(const LayerInteractionNetwork& lin) {
    const std::size_t k = lin.size();
    UnionFind uf(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (lin.counts[i][j] > 0) uf.unite(i, j);
    std::vector<int> block_of(k, -1);
    std::unordered_map<std::size_t, int> id_of_root;
    int next = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t root = uf.find(i);
        auto it = id_of_root.find(root);
        if (it == id_of_root.end()) it = id_of_root.emplace(root, next++).first;
        block_of[i] = it->second;
    }
    return block_of;
}

struct AnalysisOptions {
    double tol = 1e-10;
    int max_iter = 100000;
    bool per_block = false;  // also emit one row per LIN block
};

struct EntanglementResult {
    int component_id = 0;
    int block_id = 0;      // winning block for component rows, own id for block rows
    bool block_row = false;
    std::vector<std::string> layer_labels;  // layers of the analysis unit
    std::size_t num_nodes = 0;
    std::size_t num_edges = 0;
    std::vector<double> gamma;  // aligned with layer_labels
    double lambda_max = 0.0;
    double intensity = 0.0;
    double homogeneity = 0.0;
    double normalized_homogeneity = 0.0;
    int iterations = 0;
    bool converged = false;
};

// Per-component entanglement. Each connected component of the aggregated
// multiplex is induced, empty layers are dropped and the LIN built; if the
// LIN splits into blocks, each gets its own eigenpair and the block with
// the largest lambda represents the component (ties: more layers, then
// smallest layer id), with gamma zero-padded to the component's layer list.
// Components without edges have no layer interaction and are skipped.
inline std::vector<EntanglementResult> analyze(const MultiplexNetwork& net,
                                               const AnalysisOptions& opts = {}) {
    std::vector<EntanglementResult> out;
    const ComponentDecomposition comps = net.connected_components();
    const std::vector<MultiplexNetwork> subs = net.induce_all_components(comps);
    for (int cid = 0; cid < comps.count; ++cid) {
        const MultiplexNetwork& sub = subs[cid];
        if (sub.num_edges() == 0) continue;

        const LayerInteractionNetwork lin = build_lin(sub);
        const std::vector<int> block_of = lin_blocks(lin);
        const int num_blocks = 1 + *std::max_element(block_of.begin(), block_of.end());
        std::vector<std::vector<std::size_t>> members(num_blocks);
        for (std::size_t pos = 0; pos < block_of.size(); ++pos)
            members[block_of[pos]].push_back(pos);

        std::vector<PowerIterationResult> eigen(num_blocks);
        for (int b = 0; b < num_blocks; ++b)
            eigen[b] = power_iteration(overlap_submatrix(lin, members[b]), opts.tol,
                                       opts.max_iter);

        int winner = 0;
        for (int b = 1; b < num_blocks; ++b) {
            const auto rank = [&](int blk) {
                return std::make_tuple(eigen[blk].lambda, members[blk].size());
            };
            if (rank(b) > rank(winner)) winner = b;
            // equal lambda and size: keep the block with the smaller layer
            // id, which is the earlier block id by construction
        }

        const std::size_t k = lin.size();
        EntanglementResult row;
        row.component_id = cid;
        row.block_id = winner;
        row.num_nodes = sub.num_nodes();
        row.num_edges = sub.num_edges();
        row.layer_labels.reserve(k);
        for (const layer_index l : lin.layers) row.layer_labels.push_back(sub.layer_label(l));
        row.gamma.assign(k, 0.0);
        for (std::size_t i = 0; i < members[winner].size(); ++i)
            row.gamma[members[winner][i]] = eigen[winner].gamma[i];
        row.lambda_max = eigen[winner].lambda;
        row.intensity = intensity(row.lambda_max, k);
        row.homogeneity = homogeneity(row.gamma);
        row.normalized_homogeneity = normalized_homogeneity(row.homogeneity, k);
        row.iterations = eigen[winner].iterations;
        row.converged = eigen[winner].converged;
        out.push_back(std::move(row));

        if (opts.per_block) {
            for (int b = 0; b < num_blocks; ++b) {
                EntanglementResult block;
                block.component_id = cid;
                block.block_id = b;
                block.block_row = true;
                block.num_nodes = sub.num_nodes();
                block.num_edges = sub.num_edges();
                for (const std::size_t pos : members[b])
                    block.layer_labels.push_back(sub.layer_label(lin.layers[pos]));
                block.gamma = eigen[b].gamma;
                block.lambda_max = eigen[b].lambda;
                block.intensity = intensity(block.lambda_max, members[b].size());
                block.homogeneity = homogeneity(block.gamma);
                block.normalized_homogeneity =
                    normalized_homogeneity(block.homogeneity, members[b].size());
                block.iterations = eigen[b].iterations;
                block.converged = eigen[b].converged;
                out.push_back(std::move(block));
            }
        }
    }
    return out;
}

inline constexpr const char* kEntanglementCsvHeader =
    "dataset,component_id,lin_block_id,layers,nodes,edges,lambda_max,intensity,"
    "homogeneity,normalized_homogeneity,iterations,converged";

inline void write_entanglement_csv(const std::vector<EntanglementResult>& results,
                                   const std::string& dataset, std::ostream& out) {
    out << kEntanglementCsvHeader << '\n';
    for (const auto& r : results) {
        out << dataset << ',' << r.component_id << ',' << r.block_id << ','
            << r.layer_labels.size() << ',' << r.num_nodes << ',' << r.num_edges << ','
            << format_real(r.lambda_max) << ',' << format_real(r.intensity) << ','
            << format_real(r.homogeneity) << ',' << format_real(r.normalized_homogeneity)
            << ',' << r.iterations << ',' << (r.converged ? 1 : 0) << '\n';
    }
}

}  // namespace mxent
