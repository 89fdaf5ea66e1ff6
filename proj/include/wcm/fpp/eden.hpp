#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "wcm/experiments/stats.hpp"
#include "wcm/fpp/metric.hpp"
#include "wcm/sampler/rng.hpp"

namespace wcm::fpp {

using sampler::Rng;

struct ExplorationStep {
    int step;
    int half_edge;  // -1 on the stopping row
    int frontier_size;
    bool stopped;
};

struct ExplorationRecord {
    std::vector<int> edges;
    int k = 0;
    bool stopped = false;
    std::vector<ExplorationStep> trace;
};

// Explored cluster (V_t, E_t) together with the directed frontier.
class EdenState {
public:
    EdenState(const RotationMap& m, const std::vector<int>& V0)
        : m_(&m),
          vertex_(static_cast<std::size_t>(m.vertices()), 0),
          edge_(static_cast<std::size_t>(m.edges()), 0),
          pos_(static_cast<std::size_t>(m.half_edges()), -1) {
        if (V0.empty()) throw std::invalid_argument("exploration: empty start set");
        for (int v : V0) {
            if (v < 0 || v >= m.vertices()) throw std::out_of_range("exploration: start vertex out of range");
            add_vertex(v);
        }
    }

    const RotationMap& map() const { return *m_; }
    int time() const { return t_; }
    bool stopped() const { return stopped_; }
    bool complete() const { return frontier_.empty(); }
    const std::vector<int>& frontier() const { return frontier_; }
    bool in_frontier(int h) const { return pos_[static_cast<std::size_t>(h)] >= 0; }
    bool vertex_explored(int v) const { return vertex_[static_cast<std::size_t>(v)] != 0; }
    bool edge_explored(int e) const { return edge_[static_cast<std::size_t>(e)] != 0; }

    void stop() { stopped_ = true; }

    // Adds the undirected edge of the frontier half-edge h.
    void explore(int h) {
        if (stopped_) throw std::logic_error("exploration: already stopped");
        if (!in_frontier(h)) throw std::logic_error("exploration: edge not adjacent to the cluster");
        const int hp = m_->opp(h);
        edge_[static_cast<std::size_t>(m_->edge_of(h))] = 1;
        remove(h);
        if (in_frontier(hp)) remove(hp);
        int u = m_->vertex_of(hp);
        if (!vertex_explored(u)) add_vertex(u);
        ++t_;
    }

    // Whether v1 and v2 lie in the same component of (V_t, E_t).
    bool connected(int v1, int v2) const {
        if (!vertex_explored(v1) || !vertex_explored(v2)) return false;
        std::vector<char> seen(vertex_.size(), 0);
        std::vector<int> stack{v1};
        seen[static_cast<std::size_t>(v1)] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            if (v == v2) return true;
            int h0 = m_->some_half_edge(v), x = h0;
            if (h0 < 0) continue;
            do {
                int u = m_->vertex_of(m_->opp(x));
                if (edge_explored(m_->edge_of(x)) && !seen[static_cast<std::size_t>(u)]) {
                    seen[static_cast<std::size_t>(u)] = 1;
                    stack.push_back(u);
                }
                x = m_->next(x);
            } while (x != h0);
        }
        return false;
    }

private:
    const RotationMap* m_;
    std::vector<char> vertex_, edge_;
    std::vector<int> frontier_, pos_;
    int t_ = 0;
    bool stopped_ = false;

    void add_vertex(int v) {
        if (vertex_explored(v)) return;
        vertex_[static_cast<std::size_t>(v)] = 1;
        if (m_->degree(v) == 0) return;
        int h0 = m_->some_half_edge(v), x = h0;
        do {
            if (!edge_explored(m_->edge_of(x))) {
                pos_[static_cast<std::size_t>(x)] = static_cast<int>(frontier_.size());
                frontier_.push_back(x);
            }
            x = m_->next(x);
        } while (x != h0);
    }

    void remove(int h) {
        int i = pos_[static_cast<std::size_t>(h)];
        int last = frontier_.back();
        frontier_[static_cast<std::size_t>(i)] = last;
        pos_[static_cast<std::size_t>(last)] = i;
        frontier_.pop_back();
        pos_[static_cast<std::size_t>(h)] = -1;
    }
};

// Eden process with stopping weight w: at each step stop with probability w / (|frontier| + w),
// otherwise explore a uniform frontier half-edge.
inline ExplorationRecord eden_run(const RotationMap& m, const std::vector<int>& V0, double w, Rng& rng) {
    if (!(w >= 0)) throw std::domain_error("eden_run: w must be >= 0");
    EdenState s(m, V0);
    ExplorationRecord r;
    while (!s.complete()) {
        const int f = static_cast<int>(s.frontier().size());
        if (w > 0 && (std::isinf(w) || sampler::uniform01(rng) * (f + w) < w)) {
            s.stop();
            r.stopped = true;
            r.trace.push_back({s.time(), -1, f, true});
            break;
        }
        int h = s.frontier()[static_cast<std::size_t>(sampler::uniform_int(rng, f))];
        r.trace.push_back({s.time(), h, f, false});
        r.edges.push_back(m.edge_of(h));
        s.explore(h);
    }
    r.k = static_cast<int>(r.edges.size());
    return r;
}

inline ExplorationRecord eden_run(const RotationMap& m, int start_vertex, double w, Rng& rng) {
    return eden_run(m, std::vector<int>{start_vertex}, w, rng);
}

// Edge start: a bivalent vertex is inserted in edge e and the process starts there. Edge ids in the
// record refer to sampler::insert_marked_bivalent(m, e).
inline ExplorationRecord eden_run_from_edge(const RotationMap& m, int e, double w, Rng& rng) {
    auto x = sampler::insert_marked_bivalent(m, e);
    return eden_run(x, x.marks().back(), w, rng);
}

// Max-distance of every edge from the source set.
inline std::vector<double> edge_max_distances(const WeightedMapInstance& wm, const MetricResult& metric) {
    const RotationMap& m = wm.map;
    std::vector<double> out(static_cast<std::size_t>(m.edges()));
    for (int h = 0; h < m.half_edges(); ++h) {
        if (h > m.opp(h)) continue;
        double L = wm.length_of(h);
        double du = metric.dist[static_cast<std::size_t>(m.vertex_of(h))];
        double dv = metric.dist[static_cast<std::size_t>(m.vertex_of(m.opp(h)))];
        out[static_cast<std::size_t>(m.edge_of(h))] = std::abs(du - dv) < L ? (du + dv + L) / 2 : std::max(du, dv);
    }
    return out;
}

// Edges ordered by max-distance from V0 (ties by edge id); with a horizon T only the edges with
// max-distance < T are kept.
inline ExplorationRecord fpp_exploration(const WeightedMapInstance& wm, const std::vector<int>& V0,
                                         std::optional<double> T = std::nullopt) {
    const RotationMap& m = wm.map;
    auto metric = shortest_paths(wm, V0);
    auto md = edge_max_distances(wm, metric);
    std::vector<int> order(md.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        auto ia = static_cast<std::size_t>(a), ib = static_cast<std::size_t>(b);
        return md[ia] != md[ib] ? md[ia] < md[ib] : a < b;
    });
    std::vector<int> half(md.size(), -1);
    for (int h = 0; h < m.half_edges(); ++h)
        if (h < m.opp(h)) half[static_cast<std::size_t>(m.edge_of(h))] = h;

    // replay through the cluster state, which checks adjacency at every step
    EdenState s(m, V0);
    ExplorationRecord r;
    for (int e : order) {
        const int f = static_cast<int>(s.frontier().size());
        if (T && !(md[static_cast<std::size_t>(e)] < *T)) {
            s.stop();
            r.stopped = true;
            r.trace.push_back({s.time(), -1, f, true});
            break;
        }
        int h = half[static_cast<std::size_t>(e)], hp = m.opp(h);
        if (!s.in_frontier(h) ||
            (s.in_frontier(hp) && metric.dist[static_cast<std::size_t>(m.vertex_of(hp))] <
                                      metric.dist[static_cast<std::size_t>(m.vertex_of(h))]))
            h = hp;
        r.trace.push_back({s.time(), h, f, false});
        r.edges.push_back(e);
        s.explore(h);
    }
    r.k = static_cast<int>(r.edges.size());
    return r;
}

// Stopped FPP exploration with fresh Exp(1) lengths and horizon T ~ Exp(w) (mean 1/w; w = 0 means no stop).
inline ExplorationRecord fpp_stopped_run(const RotationMap& m, const std::vector<int>& V0, double w, Rng& rng) {
    if (!(w >= 0)) throw std::domain_error("fpp_stopped_run: w must be >= 0");
    auto wm = sampler::assign_lengths(m, rng);
    std::optional<double> T;
    if (w > 0) T = sampler::exp1(rng) / w;
    return fpp_exploration(wm, V0, T);
}

// Two-sample chi-square between the laws of stopped exploration sequences produced by the Eden rule
// and by the FPP construction. Sequences seen fewer than min_cell times in total are pooled.
inline experiments::ChiSquareResult eden_fpp_equivalence_test(const RotationMap& m, const std::vector<int>& V0,
                                                              double w, long N, Rng& rng, int min_cell = 20) {
    if (N <= 0) throw std::domain_error("eden_fpp_equivalence_test: N must be positive");
    std::map<std::vector<int>, std::pair<std::uint64_t, std::uint64_t>> cells;
    for (long i = 0; i < N; ++i) {
        ++cells[eden_run(m, V0, w, rng).edges].first;
        ++cells[fpp_stopped_run(m, V0, w, rng).edges].second;
    }
    std::vector<std::uint64_t> a, b;
    std::uint64_t pa = 0, pb = 0;
    for (auto& [seq, c] : cells) {
        if (c.first + c.second < static_cast<std::uint64_t>(min_cell)) {
            pa += c.first;
            pb += c.second;
        } else {
            a.push_back(c.first);
            b.push_back(c.second);
        }
    }
    if (pa + pb >= static_cast<std::uint64_t>(min_cell)) {
        a.push_back(pa);
        b.push_back(pb);
    }
    if (a.size() < 2) throw std::domain_error("eden_fpp_equivalence_test: insufficient N for expected cell counts");
    return experiments::chi_square_two_sample(a, b);
}

inline void write_exploration_csv(std::ostream& os, const ExplorationRecord& r) {
    os << "step,half_edge,frontier_size,stopped\n";
    for (const auto& s : r.trace) os << s.step << ',' << s.half_edge << ',' << s.frontier_size << ',' << (s.stopped ? 1 : 0) << '\n';
}

}  // namespace wcm::fpp
