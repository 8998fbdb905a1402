#pragma once

// Dense dominant-eigenpair oracle for small overlap matrices, independent of
// the power iteration it cross-checks. C^(2^64) collapses to the rank-one
// outer product of the Perron vectors, so the dominant column of the
// repeatedly squared (and renormalized) matrix is the right eigenvector.
// Test-only; sizes are capped at 12.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include <mxent/entanglement.hpp>

namespace mxent::testing {

struct OracleEigenpair {
    double lambda = 0.0;
    std::vector<double> gamma;
};

inline OracleEigenpair dense_eigen_oracle(const OverlapMatrix& c) {
    const std::size_t n = c.size();
    if (n == 0) throw std::invalid_argument("dense_eigen_oracle: empty matrix");
    if (n > 12) throw std::invalid_argument("dense_eigen_oracle: size limit is 12");

    std::vector<double> b(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b[i * n + j] = c(i, j);

    std::vector<double> next(n * n, 0.0);
    for (int squaring = 0; squaring < 64; ++squaring) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                double acc = 0.0;
                for (std::size_t t = 0; t < n; ++t) acc += b[i * n + t] * b[t * n + j];
                next[i * n + j] = acc;
            }
        }
        double frob = 0.0;
        for (const double v : next) frob += v * v;
        frob = std::sqrt(frob);
        if (frob == 0.0) throw std::runtime_error("dense_eigen_oracle: matrix power vanished");
        for (std::size_t i = 0; i < n * n; ++i) b[i] = next[i] / frob;
    }

    // dominant column, smallest index on ties
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
        double norm2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm2 += b[i * n + j] * b[i * n + j];
        if (norm2 > best_norm) {
            best_norm = norm2;
            best = j;
        }
    }

    OracleEigenpair out;
    out.gamma.resize(n);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out.gamma[i] = b[i * n + best];
        norm2 += out.gamma[i] * out.gamma[i];
    }
    const double norm = std::sqrt(norm2);
    double sum = 0.0;
    for (double& v : out.gamma) {
        v /= norm;
        sum += v;
    }
    if (sum < 0.0)
        for (double& v : out.gamma) v = -v;

    // lambda from one application of C to the eigenvector
    std::vector<double> image(n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) image[i] += c(i, j) * out.gamma[j];
    double image_norm2 = 0.0;
    for (const double v : image) image_norm2 += v * v;
    out.lambda = std::clamp(std::sqrt(image_norm2), 1.0, static_cast<double>(n));
    return out;
}

}  // namespace mxent::testing
