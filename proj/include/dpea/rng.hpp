#pragma once

#include <cstdint>
#include <random>

namespace dpea {

/// SplitMix64 step; used to derive independent per-trial seeds from a
/// campaign seed so that trials can run in any order (or in parallel)
/// without changing their individual trajectories.
inline std::uint64_t split_mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for trial number `index` of a campaign seeded with `campaign_seed`.
inline std::uint64_t derive_seed(std::uint64_t campaign_seed, std::uint64_t index) {
    return split_mix64(campaign_seed ^ split_mix64(index + 1));
}

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

/// Uniform draw from [0, n). n must be positive.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    std::uniform_int_distribution<std::size_t> dist(0, n - 1);
    return dist(rng);
}

} // namespace dpea
