#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "wcm/maps/rotation_map.hpp"
#include "wcm/sampler/rng.hpp"

namespace wcm::sampler {

using maps::RotationMap;

// Cubic map with F >= 3 faces: a tree of F - 3 internal vertices whose F - 1 leaves carry loops.
inline RotationMap initial_cubic_map(int F) {
    if (F < 3) throw std::domain_error("initial_cubic_map: F must be >= 3");
    std::vector<int> next, opp;
    auto add_vertex = [&](int d) {
        int s = static_cast<int>(next.size());
        for (int j = 0; j < d; ++j) {
            next.push_back(s + (j + 1) % d);
            opp.push_back(-1);
        }
        return s;
    };
    auto join = [&](int a, int b) {
        opp[static_cast<std::size_t>(a)] = b;
        opp[static_cast<std::size_t>(b)] = a;
    };
    auto loop_vertex = [&](int attach) {
        int s = add_vertex(3);
        join(s + 1, s + 2);
        join(s, attach);
    };
    const int leaves = F - 1, internal = leaves - 2;
    if (internal == 0) {
        int s = add_vertex(3);
        join(s + 1, s + 2);
        loop_vertex(s);
    } else {
        std::vector<int> spine;
        for (int i = 0; i < internal; ++i) spine.push_back(add_vertex(3));
        for (int i = 0; i + 1 < internal; ++i) join(spine[static_cast<std::size_t>(i)] + 1, spine[static_cast<std::size_t>(i + 1)]);
        // free half-edges: spine[0]: 0 (and 1, 2 if alone); spine[i>0]: 1 or 2 at the end
        for (int i = 0; i < internal; ++i) {
            int s = spine[static_cast<std::size_t>(i)];
            for (int j = 0; j < 3; ++j)
                if (opp[static_cast<std::size_t>(s + j)] < 0) loop_vertex(s + j);
        }
    }
    return RotationMap(std::move(next), std::move(opp));
}

// Metropolis chain of dual edge flips on cubic maps; the uniform target makes every proposal accepted
// unless it is invalid (flips of loops).
class FlipChain {
public:
    explicit FlipChain(const RotationMap& m) : next_(m.next_permutation()), opp_(m.opposite()) {
        for (int v = 0; v < m.vertices(); ++v)
            if (m.degree(v) != 3) throw std::domain_error("flip chain: map is not cubic");
        faces_ = m.faces();
    }

    int faces() const { return faces_; }
    int edges() const { return static_cast<int>(next_.size()) / 2; }
    std::uint64_t steps() const { return steps_; }
    std::uint64_t accepted() const { return accepted_; }
    std::uint64_t rejected() const { return steps_ - accepted_; }
    double acceptance_rate() const { return steps_ ? static_cast<double>(accepted_) / static_cast<double>(steps_) : 0.0; }

    RotationMap map() const { return RotationMap(next_, opp_, {}, 0); }
    const std::vector<int>& next_permutation() const { return next_; }
    const std::vector<int>& opposite() const { return opp_; }

    // Flip of the edge containing half-edge h; dir = +1 or -1 (the two flips are inverse to each other).
    // Returns false (and leaves the map unchanged) when the edge is a loop.
    bool flip(int h, int dir) {
        auto nx = [&](int x) -> int& { return next_[static_cast<std::size_t>(x)]; };
        const int hp = opp_[static_cast<std::size_t>(h)];
        const int a = nx(h), b = nx(a), c = nx(hp), d = nx(c);
        if (hp == a || hp == b) return false;
        if (dir > 0) {
            nx(h) = b, nx(b) = c, nx(c) = h;
            nx(hp) = d, nx(d) = a, nx(a) = hp;
        } else {
            nx(h) = d, nx(d) = a, nx(a) = h;
            nx(hp) = b, nx(b) = c, nx(c) = hp;
        }
        return true;
    }

    // Proposal: uniform edge and uniform direction.
    void step(Rng& rng) {
        int k = uniform_int(rng, 2 * edges());
        int e = k / 2;
        int h = first_half_edge(e);
        ++steps_;
        if (flip(h, k % 2 ? 1 : -1)) ++accepted_;
    }

    void run(std::uint64_t n, Rng& rng) {
        for (std::uint64_t i = 0; i < n; ++i) step(rng);
    }

private:
    std::vector<int> next_, opp_;
    int faces_ = 0;
    std::uint64_t steps_ = 0, accepted_ = 0;

    // Edges are the pairs {h, opp h}; edge e is identified with the smaller of its half-edges via a lookup.
    int first_half_edge(int e) {
        if (edge_half_.empty()) {
            for (int h = 0; h < static_cast<int>(opp_.size()); ++h)
                if (h < opp_[static_cast<std::size_t>(h)]) edge_half_.push_back(h);
        }
        return edge_half_[static_cast<std::size_t>(e)];
    }
    std::vector<int> edge_half_;
};

inline void flip_step(FlipChain& chain, Rng& rng) { chain.step(rng); }

struct FlipChainConfig {
    std::uint64_t burn_in_per_face = 10000;  // burn-in = burn_in_per_face * F steps
    std::uint64_t thin_per_edge = 10;        // thinning = thin_per_edge * E steps
};

// Draws n cubic maps with F faces from a flip chain after burn-in, thinning between draws.
inline std::vector<RotationMap> flip_chain_samples(int F, int n, const FlipChainConfig& cfg, Rng& rng) {
    FlipChain chain(initial_cubic_map(F));
    chain.run(cfg.burn_in_per_face * static_cast<std::uint64_t>(F), rng);
    std::vector<RotationMap> out;
    for (int i = 0; i < n; ++i) {
        if (i) chain.run(cfg.thin_per_edge * static_cast<std::uint64_t>(chain.edges()), rng);
        out.push_back(chain.map());
    }
    return out;
}

}  // namespace wcm::sampler
