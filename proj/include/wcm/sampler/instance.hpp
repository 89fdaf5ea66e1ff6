#pragma once

#include <stdexcept>
#include <vector>

#include "wcm/maps/rotation_map.hpp"
#include "wcm/sampler/rng.hpp"

namespace wcm::sampler {

using maps::RotationMap;

struct WeightedMapInstance {
    RotationMap map;
    std::vector<double> lengths;  // indexed by map.edge_of(h)

    WeightedMapInstance() = default;
    WeightedMapInstance(RotationMap m, std::vector<double> L) : map(std::move(m)), lengths(std::move(L)) {
        if (static_cast<int>(lengths.size()) != map.edges())
            throw std::invalid_argument("weighted map: one length per edge required");
        for (double l : lengths)
            if (!(l > 0)) throw std::invalid_argument("weighted map: lengths must be > 0");
    }
    double length_of(int h) const { return lengths[static_cast<std::size_t>(map.edge_of(h))]; }
};

// i.i.d. Exp(1) lengths per edge, in edge order.
inline WeightedMapInstance assign_lengths(const RotationMap& m, Rng& rng) {
    std::vector<double> L(static_cast<std::size_t>(m.edges()));
    for (double& l : L) {
        do l = exp1(rng);
        while (!(l > 0));
    }
    return {m, std::move(L)};
}

namespace detail {

// Half-edge h of the edge with id e.
inline int half_edge_of_edge(const RotationMap& m, int e) {
    if (e < 0 || e >= m.edges()) throw std::out_of_range("edge index out of range");
    for (int h = 0; h < m.half_edges(); ++h)
        if (m.edge_of(h) == e) return h;
    throw std::logic_error("edge without half-edge");
}

}  // namespace detail

// Subdivides edge e with a new marked bivalent vertex (appended to the marks). New half-edges get the
// labels 2E and 2E+1, so existing vertex ids are unchanged and the new vertex id is V.
inline RotationMap insert_marked_bivalent(const RotationMap& m, int e) {
    const int h = detail::half_edge_of_edge(m, e), hp = m.opp(h), H = m.half_edges();
    std::vector<int> next = m.next_permutation(), opp = m.opposite();
    const int x = H, y = H + 1;
    next.push_back(y);
    next.push_back(x);
    opp.push_back(h);
    opp.push_back(hp);
    opp[static_cast<std::size_t>(h)] = x;
    opp[static_cast<std::size_t>(hp)] = y;
    std::vector<int> marks = m.marks();
    marks.push_back(m.vertices());
    return RotationMap(std::move(next), std::move(opp), std::move(marks), m.root());
}

// Weighted version: the new vertex sits at a uniform position on the edge.
inline WeightedMapInstance insert_marked_bivalent(const WeightedMapInstance& wm, int e, Rng& rng) {
    const int h = detail::half_edge_of_edge(wm.map, e);
    const double L = wm.lengths[static_cast<std::size_t>(e)];
    double u;
    do u = uniform01(rng);
    while (!(u > 0 && L * u > 0 && L * (1 - u) > 0));
    RotationMap m = insert_marked_bivalent(wm.map, e);
    const int H = wm.map.half_edges();
    std::vector<double> lengths(static_cast<std::size_t>(m.edges()));
    for (int x = 0; x < m.half_edges(); ++x) {
        double l;
        if (x == h || x == H)
            l = L * u;
        else if (x == H + 1 || x == wm.map.opp(h))
            l = L * (1 - u);
        else
            l = wm.length_of(x);
        lengths[static_cast<std::size_t>(m.edge_of(x))] = l;
    }
    return {std::move(m), std::move(lengths)};
}

// Subdivides edge e with a new cubic vertex carrying a pendant marked leaf on the given side (0 or 1).
inline RotationMap insert_marked_leaf(const RotationMap& m, int e, int side) {
    if (side != 0 && side != 1) throw std::invalid_argument("insert_marked_leaf: side must be 0 or 1");
    const int h = detail::half_edge_of_edge(m, e), hp = m.opp(h), H = m.half_edges();
    std::vector<int> next = m.next_permutation(), opp = m.opposite();
    const int x = H, y = H + 1, z = H + 2, l = H + 3;
    next.resize(static_cast<std::size_t>(H + 4));
    opp.resize(static_cast<std::size_t>(H + 4));
    if (side == 0) {
        next[static_cast<std::size_t>(x)] = y;
        next[static_cast<std::size_t>(y)] = z;
        next[static_cast<std::size_t>(z)] = x;
    } else {
        next[static_cast<std::size_t>(x)] = z;
        next[static_cast<std::size_t>(z)] = y;
        next[static_cast<std::size_t>(y)] = x;
    }
    next[static_cast<std::size_t>(l)] = l;
    opp[static_cast<std::size_t>(h)] = x;
    opp[static_cast<std::size_t>(x)] = h;
    opp[static_cast<std::size_t>(hp)] = y;
    opp[static_cast<std::size_t>(y)] = hp;
    opp[static_cast<std::size_t>(z)] = l;
    opp[static_cast<std::size_t>(l)] = z;
    std::vector<int> marks = m.marks();
    marks.push_back(m.vertices() + 1);
    return RotationMap(std::move(next), std::move(opp), std::move(marks), m.root());
}

// Removes bivalent vertex v by joining its two edges (inverse of insert_marked_bivalent).
inline RotationMap smooth_bivalent(const RotationMap& m, int v) {
    if (m.degree(v) != 2) throw std::invalid_argument("smooth_bivalent: vertex is not bivalent");
    const int x = m.some_half_edge(v), y = m.next(x), p = m.opp(x), q = m.opp(y);
    if (p == y) throw std::invalid_argument("smooth_bivalent: vertex carries a loop");
    const int H = m.half_edges();
    std::vector<int> relabel(static_cast<std::size_t>(H), -1);
    for (int h = 0, n = 0; h < H; ++h)
        if (h != x && h != y) relabel[static_cast<std::size_t>(h)] = n++;
    std::vector<int> next(static_cast<std::size_t>(H - 2)), opp(static_cast<std::size_t>(H - 2));
    for (int h = 0; h < H; ++h) {
        int r = relabel[static_cast<std::size_t>(h)];
        if (r < 0) continue;
        next[static_cast<std::size_t>(r)] = relabel[static_cast<std::size_t>(m.next(h))];
        int o = h == p ? q : h == q ? p : m.opp(h);
        opp[static_cast<std::size_t>(r)] = relabel[static_cast<std::size_t>(o)];
    }
    RotationMap bare(next, opp);
    std::vector<int> marks;
    for (int w : m.marks())
        if (w != v) marks.push_back(bare.vertex_of(relabel[static_cast<std::size_t>(m.some_half_edge(w))]));
    int root = m.root() < 0 || m.root() == x || m.root() == y ? -1 : relabel[static_cast<std::size_t>(m.root())];
    return RotationMap(std::move(next), std::move(opp), std::move(marks), root);
}

}  // namespace wcm::sampler
