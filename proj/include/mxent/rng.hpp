#pragma once

#include <cstdint>

namespace mxent {

// Algorithm name recorded in generator metadata so results can be
// reproduced across builds.
inline constexpr const char* kRngAlgorithm = "splitmix64";

// splitmix64 (Steele, Lea, Flood): the state is a counter advanced by a
// fixed odd constant, the output an avalanche mix of it. Splittable:
// independent substreams are derived by re-keying the seed.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() { return next(); }

    result_type next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1), 53-bit resolution.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound), bound >= 1. Unbiased (rejection).
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        for (;;) {
            const std::uint64_t r = next();
            if (r >= threshold) return r % bound;
        }
    }

private:
    std::uint64_t state_;
};

/// Seed of an independent substream. The generator uses stream 0 for layer
/// assignment and stream 1+l for edge sampling of layer l, so layers can be
/// sampled in any order (or concurrently) with identical results.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    return g.next();
}

}  // namespace mxent
