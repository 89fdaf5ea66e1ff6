#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "wcm/maps/rotation_map.hpp"

namespace wcm::maps {

inline constexpr int kMaxEnumerationEdges = 10;

struct EnumerationFilter {
    // Allowed vertex degrees; empty means any degree.
    std::vector<int> degrees;
    // Final predicate on the complete rooted map.
    std::function<bool(const RotationMap&)> accept;
};

namespace detail {

class Enumerator {
public:
    Enumerator(int E, const EnumerationFilter& f, const std::function<void(const RotationMap&)>& out)
        : H_(2 * E), filter_(f), out_(out), next_(static_cast<std::size_t>(H_), -1), opp_(static_cast<std::size_t>(H_), -1) {}

    void run() {
        for (int d = 1; d <= H_; ++d) {
            if (!allowed(d)) continue;
            add_vertex(d);
            step(0);
            labelled_ -= d;
        }
    }

private:
    int H_;
    const EnumerationFilter& filter_;
    const std::function<void(const RotationMap&)>& out_;
    std::vector<int> next_, opp_;
    int labelled_ = 0;

    bool allowed(int d) const {
        if (filter_.degrees.empty()) return true;
        for (int x : filter_.degrees)
            if (x == d) return true;
        return false;
    }

    void add_vertex(int d) {
        for (int j = 0; j < d; ++j) next_[static_cast<std::size_t>(labelled_ + j)] = labelled_ + (j + 1) % d;
        labelled_ += d;
    }

    // Half-edges are labelled in breadth-first order from the root, so every rooted map is produced once.
    void step(int i) {
        while (i < labelled_ && opp_[static_cast<std::size_t>(i)] >= 0) ++i;
        if (i == labelled_) {
            if (labelled_ == H_) emit();
            return;
        }
        for (int j = i + 1; j < labelled_; ++j) {
            if (opp_[static_cast<std::size_t>(j)] >= 0) continue;
            opp_[static_cast<std::size_t>(i)] = j;
            opp_[static_cast<std::size_t>(j)] = i;
            step(i + 1);
            opp_[static_cast<std::size_t>(i)] = opp_[static_cast<std::size_t>(j)] = -1;
        }
        const int start = labelled_;
        for (int d = 1; d <= H_ - start; ++d) {
            if (!allowed(d)) continue;
            add_vertex(d);
            opp_[static_cast<std::size_t>(i)] = start;
            opp_[static_cast<std::size_t>(start)] = i;
            step(i + 1);
            opp_[static_cast<std::size_t>(i)] = opp_[static_cast<std::size_t>(start)] = -1;
            labelled_ = start;
        }
    }

    void emit() {
        // genus check before building the validated object
        int V = 0, F = 0;
        std::vector<char> vis(static_cast<std::size_t>(H_), 0);
        for (int h = 0; h < H_; ++h)
            if (!vis[static_cast<std::size_t>(h)]) {
                ++V;
                for (int x = h; !vis[static_cast<std::size_t>(x)]; x = next_[static_cast<std::size_t>(x)]) vis[static_cast<std::size_t>(x)] = 1;
            }
        std::fill(vis.begin(), vis.end(), 0);
        for (int h = 0; h < H_; ++h)
            if (!vis[static_cast<std::size_t>(h)]) {
                ++F;
                for (int x = h; !vis[static_cast<std::size_t>(x)];
                     x = next_[static_cast<std::size_t>(opp_[static_cast<std::size_t>(x)])])
                    vis[static_cast<std::size_t>(x)] = 1;
            }
        if (V - H_ / 2 + F != 2) return;
        RotationMap m(next_, opp_, {}, 0);
        if (filter_.accept && !filter_.accept(m)) return;
        out_(m);
    }
};

}  // namespace detail

// Calls out(m) once for every rooted planar map with E edges passing the filter (root = half-edge 0).
inline void enumerate_maps(int E, const EnumerationFilter& filter, const std::function<void(const RotationMap&)>& out) {
    if (E < 1 || E > kMaxEnumerationEdges)
        throw std::domain_error("enumerate_maps: E must be in [1, " + std::to_string(kMaxEnumerationEdges) + "]");
    detail::Enumerator(E, filter, out).run();
}

inline std::vector<RotationMap> collect_maps(int E, const EnumerationFilter& filter = {}) {
    std::vector<RotationMap> v;
    enumerate_maps(E, filter, [&](const RotationMap& m) { v.push_back(m); });
    return v;
}

// Rooted cubic maps with F faces.
inline std::vector<RotationMap> rooted_cubic_maps(int F) {
    if (F < 3) throw std::domain_error("rooted_cubic_maps: F must be >= 3");
    return collect_maps(3 * (F - 2), {{3}, {}});
}

}  // namespace wcm::maps
