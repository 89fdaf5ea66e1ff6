#pragma once

#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "wcm/maps/rotation_map.hpp"

namespace wcm::maps {

struct CoreKernelResult {
    RotationMap map;
    std::vector<int> chain_length;  // per edge of map, indexed by edge_of
    double ell = 1;

    double length(int edge) const { return chain_length[static_cast<std::size_t>(edge)] * ell; }
};

namespace detail {

// Keeps the half-edges with keep[h], using the supplied next/opp on them.
inline RotationMap rebuild(const RotationMap& m, const std::vector<char>& keep, const std::vector<int>& next,
                           const std::vector<int>& opp) {
    const int H = m.half_edges();
    std::vector<int> relabel(static_cast<std::size_t>(H), -1);
    int n = 0;
    for (int h = 0; h < H; ++h)
        if (keep[static_cast<std::size_t>(h)]) relabel[static_cast<std::size_t>(h)] = n++;
    std::vector<int> nx(static_cast<std::size_t>(n)), op(static_cast<std::size_t>(n));
    for (int h = 0; h < H; ++h) {
        int r = relabel[static_cast<std::size_t>(h)];
        if (r < 0) continue;
        nx[static_cast<std::size_t>(r)] = relabel[static_cast<std::size_t>(next[static_cast<std::size_t>(h)])];
        op[static_cast<std::size_t>(r)] = relabel[static_cast<std::size_t>(opp[static_cast<std::size_t>(h)])];
    }
    RotationMap bare(nx, op);
    std::vector<int> marks;
    for (int v : m.marks()) {
        int h0 = m.some_half_edge(v), x = h0, found = -1;
        do {
            if (keep[static_cast<std::size_t>(x)]) found = x;
            x = m.next(x);
        } while (x != h0 && found < 0);
        if (found < 0 && n > 0) throw std::logic_error("rebuild: marked vertex lost all its edges");
        marks.push_back(found < 0 ? 0 : bare.vertex_of(relabel[static_cast<std::size_t>(found)]));
    }
    int root = m.root() >= 0 ? relabel[static_cast<std::size_t>(m.root())] : -1;
    return RotationMap(std::move(nx), std::move(op), std::move(marks), root);
}

}  // namespace detail

// Phi: repeatedly deletes edges with an unmarked univalent endpoint. Needs F + n >= 3.
inline RotationMap core(const RotationMap& m) {
    if (m.faces() + static_cast<int>(m.marks().size()) < 3) throw std::domain_error("core: needs F + n >= 3");
    const int H = m.half_edges();
    std::vector<int> next = m.next_permutation();
    std::vector<int> prev(static_cast<std::size_t>(H));
    for (int h = 0; h < H; ++h) prev[static_cast<std::size_t>(next[static_cast<std::size_t>(h)])] = h;
    std::vector<int> deg(static_cast<std::size_t>(m.vertices()));
    for (int v = 0; v < m.vertices(); ++v) deg[static_cast<std::size_t>(v)] = m.degree(v);
    std::vector<char> keep(static_cast<std::size_t>(H), 1), marked(static_cast<std::size_t>(m.vertices()), 0);
    for (int v : m.marks()) marked[static_cast<std::size_t>(v)] = 1;
    std::vector<int> leaves;
    for (int v = 0; v < m.vertices(); ++v)
        if (deg[static_cast<std::size_t>(v)] == 1 && !marked[static_cast<std::size_t>(v)]) leaves.push_back(v);
    auto detach = [&](int x) {
        int p = prev[static_cast<std::size_t>(x)], n = next[static_cast<std::size_t>(x)];
        next[static_cast<std::size_t>(p)] = n;
        prev[static_cast<std::size_t>(n)] = p;
        keep[static_cast<std::size_t>(x)] = 0;
    };
    while (!leaves.empty()) {
        int v = leaves.back();
        leaves.pop_back();
        if (deg[static_cast<std::size_t>(v)] != 1) continue;
        int h = -1;
        for (int x = m.some_half_edge(v);; x = m.next(x))
            if (keep[static_cast<std::size_t>(x)]) {
                h = x;
                break;
            }
        int o = m.opp(h), w = m.vertex_of(o);
        detach(h);
        detach(o);
        deg[static_cast<std::size_t>(v)] = 0;
        if (--deg[static_cast<std::size_t>(w)] == 1 && !marked[static_cast<std::size_t>(w)]) leaves.push_back(w);
    }
    return detail::rebuild(m, keep, next, m.opposite());
}

// Psi_ell: suppresses unmarked bivalent vertices; each surviving edge records the length of its chain.
inline CoreKernelResult kernel(const RotationMap& m, double ell) {
    if (!(ell > 0)) throw std::domain_error("kernel: ell must be > 0");
    const int H = m.half_edges();
    std::vector<char> marked(static_cast<std::size_t>(m.vertices()), 0);
    for (int v : m.marks()) marked[static_cast<std::size_t>(v)] = 1;
    auto suppressed = [&](int v) { return !marked[static_cast<std::size_t>(v)] && m.degree(v) == 2; };
    for (int v = 0; v < m.vertices(); ++v)
        if (!marked[static_cast<std::size_t>(v)] && m.degree(v) <= 1)
            throw std::domain_error("kernel: unmarked vertex of degree <= 1 (apply core first)");
    std::vector<char> keep(static_cast<std::size_t>(H), 0);
    bool any = false;
    for (int h = 0; h < H; ++h)
        if (!suppressed(m.vertex_of(h))) keep[static_cast<std::size_t>(h)] = any = 1;
    if (!any) throw std::domain_error("kernel: cycle made only of unmarked bivalent vertices");
    std::vector<int> opp(static_cast<std::size_t>(H), -1), len(static_cast<std::size_t>(H), 0);
    for (int h = 0; h < H; ++h) {
        if (!keep[static_cast<std::size_t>(h)]) continue;
        int k = 1, x = m.opp(h);
        while (suppressed(m.vertex_of(x))) {
            x = m.opp(m.next(x));
            ++k;
        }
        opp[static_cast<std::size_t>(h)] = x;
        len[static_cast<std::size_t>(h)] = k;
    }
    CoreKernelResult r{detail::rebuild(m, keep, m.next_permutation(), opp), {}, ell};
    r.chain_length.assign(static_cast<std::size_t>(r.map.edges()), 0);
    for (int h = 0, n = 0; h < H; ++h)
        if (keep[static_cast<std::size_t>(h)]) r.chain_length[static_cast<std::size_t>(r.map.edge_of(n++))] = len[static_cast<std::size_t>(h)];
    return r;
}

// Weighted distances in a kernel, as integer multiples of ell.
inline std::vector<long> kernel_chain_distances(const CoreKernelResult& k, int s) {
    const RotationMap& m = k.map;
    std::vector<long> d(static_cast<std::size_t>(m.vertices()), std::numeric_limits<long>::max());
    using Item = std::pair<long, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    d[static_cast<std::size_t>(s)] = 0;
    pq.push({0, s});
    while (!pq.empty()) {
        auto [dv, v] = pq.top();
        pq.pop();
        if (dv != d[static_cast<std::size_t>(v)] || m.degree(v) == 0) continue;
        int h0 = m.some_half_edge(v), x = h0;
        do {
            int w = m.vertex_of(m.opp(x));
            long nd = dv + k.chain_length[static_cast<std::size_t>(m.edge_of(x))];
            if (nd < d[static_cast<std::size_t>(w)]) {
                d[static_cast<std::size_t>(w)] = nd;
                pq.push({nd, w});
            }
            x = m.next(x);
        } while (x != h0);
    }
    return d;
}

inline std::vector<double> kernel_distances(const CoreKernelResult& k, int s) {
    auto c = kernel_chain_distances(k, s);
    std::vector<double> d(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) d[i] = static_cast<double>(c[i]) * k.ell;
    return d;
}

}  // namespace wcm::maps
