#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

#include "wcm/sampler/instance.hpp"

namespace wcm::fpp {

using maps::RotationMap;
using sampler::WeightedMapInstance;

struct MetricResult {
    std::vector<double> dist;
    std::vector<int> pred;  // half-edge at the predecessor pointing to the vertex; -1 for sources
};

// Multi-source Dijkstra; ties are settled in (distance, vertex) order.
inline MetricResult shortest_paths(const WeightedMapInstance& wm, const std::vector<int>& sources) {
    const RotationMap& m = wm.map;
    const int V = m.vertices();
    MetricResult r{std::vector<double>(static_cast<std::size_t>(V), std::numeric_limits<double>::infinity()),
                   std::vector<int>(static_cast<std::size_t>(V), -1)};
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    for (int s : sources) {
        if (s < 0 || s >= V) throw std::out_of_range("shortest_paths: source out of range");
        r.dist[static_cast<std::size_t>(s)] = 0;
        pq.push({0.0, s});
    }
    std::vector<char> done(static_cast<std::size_t>(V), 0);
    while (!pq.empty()) {
        auto [d, v] = pq.top();
        pq.pop();
        if (done[static_cast<std::size_t>(v)]) continue;
        done[static_cast<std::size_t>(v)] = 1;
        if (m.degree(v) == 0) continue;
        int h0 = m.some_half_edge(v), x = h0;
        do {
            int u = m.vertex_of(m.opp(x));
            double nd = d + wm.length_of(x);
            if (u != v && nd < r.dist[static_cast<std::size_t>(u)]) {
                r.dist[static_cast<std::size_t>(u)] = nd;
                r.pred[static_cast<std::size_t>(u)] = x;
                pq.push({nd, u});
            }
            x = m.next(x);
        } while (x != h0);
    }
    return r;
}

// max over points x of edge e of the distance to the source set.
inline double edge_max_distance(const WeightedMapInstance& wm, const MetricResult& metric, int e) {
    const RotationMap& m = wm.map;
    int h = sampler::detail::half_edge_of_edge(m, e);
    double L = wm.lengths[static_cast<std::size_t>(e)];
    double du = metric.dist[static_cast<std::size_t>(m.vertex_of(h))];
    double dv = metric.dist[static_cast<std::size_t>(m.vertex_of(m.opp(h)))];
    if (std::abs(du - dv) < L) return (du + dv + L) / 2;
    return std::max(du, dv);
}

// Shortest path from v1 to v2 as the list of half-edges traversed.
inline std::vector<int> geodesic_half_edges(const WeightedMapInstance& wm, const MetricResult& from_v1, int v2) {
    std::vector<int> path;
    for (int v = v2; from_v1.pred[static_cast<std::size_t>(v)] >= 0;) {
        int h = from_v1.pred[static_cast<std::size_t>(v)];
        path.push_back(h);
        v = wm.map.vertex_of(h);
    }
    if (from_v1.dist[static_cast<std::size_t>(v2)] != 0 && path.empty())
        throw std::logic_error("geodesic: target not reached");
    std::reverse(path.begin(), path.end());
    return path;
}

// Interior vertices on the geodesic between v1 and v2.
inline int geodesic_vertex_count(const WeightedMapInstance& wm, int v1, int v2) {
    if (v1 == v2) return 0;
    auto metric = shortest_paths(wm, {v1});
    return static_cast<int>(geodesic_half_edges(wm, metric, v2).size()) - 1;
}

struct LocalMaximum {
    int edge;
    double position;  // from the endpoint at the edge's first half-edge
    double distance;
};

// Points where the fronts from the sources meet: one per edge outside the shortest-path forest.
inline std::vector<LocalMaximum> local_maxima(const WeightedMapInstance& wm, const MetricResult& metric) {
    const RotationMap& m = wm.map;
    std::vector<LocalMaximum> out;
    for (int h = 0; h < m.half_edges(); ++h) {
        if (h > m.opp(h)) continue;
        int e = m.edge_of(h);
        double L = wm.lengths[static_cast<std::size_t>(e)];
        double du = metric.dist[static_cast<std::size_t>(m.vertex_of(h))];
        double dv = metric.dist[static_cast<std::size_t>(m.vertex_of(m.opp(h)))];
        bool tree = metric.pred[static_cast<std::size_t>(m.vertex_of(m.opp(h)))] == h ||
                    metric.pred[static_cast<std::size_t>(m.vertex_of(h))] == m.opp(h);
        if (tree) continue;
        double pos = std::clamp((dv - du + L) / 2, 0.0, L);
        out.push_back({e, pos, du + pos});
    }
    return out;
}

inline std::vector<LocalMaximum> local_maxima(const WeightedMapInstance& wm, int v1) {
    return local_maxima(wm, shortest_paths(wm, {v1}));
}

}  // namespace wcm::fpp
