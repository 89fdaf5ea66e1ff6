#pragma once

#include <mutex>
#include <stdexcept>
#include <vector>

#include "wcm/maps/enumerate.hpp"
#include "wcm/sampler/instance.hpp"

namespace wcm::sampler {

inline constexpr int kExactSamplerMaxFaces = 5;

// Table of all rooted cubic maps with F faces (3 <= F <= 5), built once.
inline const std::vector<RotationMap>& cubic_table(int F) {
    if (F < 3 || F > kExactSamplerMaxFaces)
        throw std::domain_error("exact sampler: F must be in [3, " + std::to_string(kExactSamplerMaxFaces) + "]");
    static std::mutex mu;
    static std::vector<std::vector<RotationMap>> tables(kExactSamplerMaxFaces + 1);
    std::lock_guard lock(mu);
    auto& t = tables[static_cast<std::size_t>(F)];
    if (t.empty()) t = maps::rooted_cubic_maps(F);
    return t;
}

// Adds marks of the given degrees (1, 2 or 3), in that order, to a cubic map. Degree-3 marks pick a
// uniform unmarked cubic vertex; degree-1 and 2 marks are inserted into a uniform edge (and side).
// Every marked map arises from exactly one insertion, so uniform input gives uniform output.
inline RotationMap add_marks(RotationMap m, const std::vector<int>& mark_degrees, Rng& rng) {
    for (int d : mark_degrees)
        if (d < 1 || d > 3) throw std::domain_error("sampler: mark degrees must be 1, 2 or 3");
    for (int d : mark_degrees) {
        if (d == 3) {
            std::vector<int> free;
            for (int v = 0; v < m.vertices(); ++v)
                if (m.degree(v) == 3 && !m.is_marked(v)) free.push_back(v);
            if (free.empty()) throw std::domain_error("sampler: not enough cubic vertices to mark");
            int v = free[static_cast<std::size_t>(uniform_int(rng, static_cast<int>(free.size())))];
            auto marks = m.marks();
            marks.push_back(v);
            m = m.with_marks(std::move(marks));
        } else if (d == 2) {
            m = insert_marked_bivalent(m, uniform_int(rng, m.edges()));
        } else {
            int k = uniform_int(rng, 2 * m.edges());
            m = insert_marked_leaf(m, k / 2, k % 2);
        }
    }
    return m;
}

// Uniform rooted almost cubic map with F faces whose marked vertices have the given degrees.
inline RotationMap exact_sample(int F, const std::vector<int>& mark_degrees, Rng& rng) {
    const auto& table = cubic_table(F);
    for (int d : mark_degrees)
        if (d < 1 || d > 3) throw std::domain_error("exact sampler: mark degrees must be 1, 2 or 3");
    const auto& m = table[static_cast<std::size_t>(uniform_int(rng, static_cast<int>(table.size())))];
    return add_marks(m, mark_degrees, rng);
}

}  // namespace wcm::sampler
