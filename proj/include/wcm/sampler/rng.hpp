#pragma once

#include <cstdint>
#include <random>

namespace wcm::sampler {

using Rng = std::mt19937_64;

// Independent stream keyed by (master seed, worker, replica).
inline Rng make_rng(std::uint64_t seed, std::uint64_t worker = 0, std::uint64_t replica = 0) {
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(worker), hi(worker), lo(replica), hi(replica)};
    return Rng(seq);
}

inline double exp1(Rng& rng) { return std::exponential_distribution<double>(1.0)(rng); }
inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }
inline int uniform_int(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

}  // namespace wcm::sampler
