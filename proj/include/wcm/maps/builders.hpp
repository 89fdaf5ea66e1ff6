#pragma once

#include <stdexcept>
#include <vector>

#include "wcm/maps/rotation_map.hpp"

namespace wcm::maps {

// Two vertices joined by k >= 1 parallel edges; edge i has half-edge i at vertex 0.
inline RotationMap parallel_edge_map(int k) {
    if (k < 1) throw std::domain_error("parallel_edge_map: k must be >= 1");
    std::vector<int> next(static_cast<std::size_t>(2 * k)), opp(static_cast<std::size_t>(2 * k));
    for (int i = 0; i < k; ++i) {
        next[static_cast<std::size_t>(i)] = (i + 1) % k;
        next[static_cast<std::size_t>(k + i)] = k + (i + 1) % k;
        opp[static_cast<std::size_t>(i)] = 2 * k - 1 - i;
        opp[static_cast<std::size_t>(2 * k - 1 - i)] = i;
    }
    return RotationMap(std::move(next), std::move(opp));
}

// Path with n >= 1 edges; vertex ids follow the path order.
inline RotationMap path_map(int n) {
    if (n < 1) throw std::domain_error("path_map: n must be >= 1");
    // half-edges: 2i at vertex i pointing forward, 2i+1 at vertex i+1 pointing back
    std::vector<int> next(static_cast<std::size_t>(2 * n)), opp(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < n; ++i) {
        opp[static_cast<std::size_t>(2 * i)] = 2 * i + 1;
        opp[static_cast<std::size_t>(2 * i + 1)] = 2 * i;
    }
    next[0] = 0;
    for (int i = 0; i + 1 < n; ++i) {
        next[static_cast<std::size_t>(2 * i + 1)] = 2 * i + 2;
        next[static_cast<std::size_t>(2 * i + 2)] = 2 * i + 1;
    }
    next[static_cast<std::size_t>(2 * n - 1)] = 2 * n - 1;
    return RotationMap(std::move(next), std::move(opp));
}

}  // namespace wcm::maps
