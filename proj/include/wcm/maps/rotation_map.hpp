#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace wcm::maps {

// Planar map as a rotation system on half-edges 0..2E-1.
// next: successor around the vertex; opp: the other half of the edge.
// Vertices are numbered in order of first appearance when scanning half-edges 0, 1, 2, ...
// The map with E = 0 is the single vertex map.
class RotationMap {
public:
    RotationMap() : RotationMap(std::vector<int>{}, std::vector<int>{}) {}

    RotationMap(std::vector<int> next, std::vector<int> opp, std::vector<int> marks = {}, int root = -1)
        : next_(std::move(next)), opp_(std::move(opp)), marks_(std::move(marks)), root_(root) {
        validate();
    }

    int half_edges() const { return static_cast<int>(next_.size()); }
    int edges() const { return half_edges() / 2; }
    int vertices() const { return static_cast<int>(vertex_start_.size()); }
    int faces() const { return faces_; }

    int next(int h) const { return next_[static_cast<std::size_t>(h)]; }
    int opp(int h) const { return opp_[static_cast<std::size_t>(h)]; }
    const std::vector<int>& next_permutation() const { return next_; }
    const std::vector<int>& opposite() const { return opp_; }

    int vertex_of(int h) const { return vertex_of_[static_cast<std::size_t>(h)]; }
    int degree(int v) const { return degree_[static_cast<std::size_t>(v)]; }
    int some_half_edge(int v) const { return vertex_start_[static_cast<std::size_t>(v)]; }
    int edge_of(int h) const { return edge_of_[static_cast<std::size_t>(h)]; }

    const std::vector<int>& marks() const { return marks_; }
    int root() const { return root_; }
    bool is_marked(int v) const { return std::find(marks_.begin(), marks_.end(), v) != marks_.end(); }

    RotationMap with_marks(std::vector<int> marks) const { return RotationMap(next_, opp_, std::move(marks), root_); }
    RotationMap with_root(int root) const { return RotationMap(next_, opp_, marks_, root); }

    friend bool operator==(const RotationMap& a, const RotationMap& b) {
        return a.next_ == b.next_ && a.opp_ == b.opp_ && a.marks_ == b.marks_ && a.root_ == b.root_;
    }

private:
    std::vector<int> next_, opp_, marks_;
    int root_ = -1;
    std::vector<int> vertex_of_, vertex_start_, degree_, edge_of_;
    int faces_ = 1;

    void validate() {
        const int H = static_cast<int>(next_.size());
        if (static_cast<int>(opp_.size()) != H) throw std::invalid_argument("rotation map: permutation sizes differ");
        if (H % 2 != 0) throw std::invalid_argument("rotation map: odd number of half-edges");
        std::vector<char> seen(static_cast<std::size_t>(H), 0);
        for (int h = 0; h < H; ++h) {
            int n = next_[static_cast<std::size_t>(h)];
            if (n < 0 || n >= H || seen[static_cast<std::size_t>(n)])
                throw std::invalid_argument("rotation map: next is not a permutation");
            seen[static_cast<std::size_t>(n)] = 1;
        }
        for (int h = 0; h < H; ++h) {
            int o = opp_[static_cast<std::size_t>(h)];
            if (o < 0 || o >= H || o == h || opp_[static_cast<std::size_t>(o)] != h)
                throw std::invalid_argument("rotation map: opp is not a fixed-point-free involution");
        }
        vertex_of_.assign(static_cast<std::size_t>(H), -1);
        for (int h = 0; h < H; ++h) {
            if (vertex_of_[static_cast<std::size_t>(h)] >= 0) continue;
            int v = static_cast<int>(vertex_start_.size()), d = 0, x = h;
            do {
                vertex_of_[static_cast<std::size_t>(x)] = v;
                ++d;
                x = next_[static_cast<std::size_t>(x)];
            } while (x != h);
            vertex_start_.push_back(h);
            degree_.push_back(d);
        }
        if (H == 0) {
            vertex_start_.push_back(-1);
            degree_.push_back(0);
        }
        edge_of_.assign(static_cast<std::size_t>(H), -1);
        for (int h = 0, e = 0; h < H; ++h)
            if (edge_of_[static_cast<std::size_t>(h)] < 0) {
                edge_of_[static_cast<std::size_t>(h)] = e;
                edge_of_[static_cast<std::size_t>(opp_[static_cast<std::size_t>(h)])] = e;
                ++e;
            }
        // connectivity
        if (H > 0) {
            std::vector<char> vis(static_cast<std::size_t>(vertices()), 0);
            std::vector<int> stack{0};
            vis[0] = 1;
            int count = 1;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                int h0 = vertex_start_[static_cast<std::size_t>(v)], x = h0;
                do {
                    int w = vertex_of_[static_cast<std::size_t>(opp_[static_cast<std::size_t>(x)])];
                    if (!vis[static_cast<std::size_t>(w)]) {
                        vis[static_cast<std::size_t>(w)] = 1;
                        ++count;
                        stack.push_back(w);
                    }
                    x = next_[static_cast<std::size_t>(x)];
                } while (x != h0);
            }
            if (count != vertices()) throw std::invalid_argument("rotation map: not connected");
        }
        // faces are the cycles of h -> next(opp(h))
        if (H > 0) {
            faces_ = 0;
            std::vector<char> vis(static_cast<std::size_t>(H), 0);
            for (int h = 0; h < H; ++h) {
                if (vis[static_cast<std::size_t>(h)]) continue;
                ++faces_;
                int x = h;
                do {
                    vis[static_cast<std::size_t>(x)] = 1;
                    x = next_[static_cast<std::size_t>(opp_[static_cast<std::size_t>(x)])];
                } while (x != h);
            }
        }
        if (vertices() - edges() + faces_ != 2) throw std::invalid_argument("rotation map: genus is not zero");
        for (std::size_t i = 0; i < marks_.size(); ++i) {
            if (marks_[i] < 0 || marks_[i] >= vertices()) throw std::invalid_argument("rotation map: mark out of range");
            for (std::size_t j = 0; j < i; ++j)
                if (marks_[i] == marks_[j]) throw std::invalid_argument("rotation map: marks must be distinct");
        }
        if (root_ < -1 || root_ >= H) throw std::invalid_argument("rotation map: root out of range");
    }
};

// Graph distances (edge count) from vertex s.
inline std::vector<int> graph_distances(const RotationMap& m, int s) {
    std::vector<int> d(static_cast<std::size_t>(m.vertices()), -1);
    d[static_cast<std::size_t>(s)] = 0;
    std::deque<int> q{s};
    while (!q.empty()) {
        int v = q.front();
        q.pop_front();
        if (m.degree(v) == 0) continue;
        int h0 = m.some_half_edge(v), x = h0;
        do {
            int w = m.vertex_of(m.opp(x));
            if (d[static_cast<std::size_t>(w)] < 0) {
                d[static_cast<std::size_t>(w)] = d[static_cast<std::size_t>(v)] + 1;
                q.push_back(w);
            }
            x = m.next(x);
        } while (x != h0);
    }
    return d;
}

// Breadth-first relabelling from half-edge r: returns order[label] = half-edge.
inline std::vector<int> bfs_order(const RotationMap& m, int r) {
    const int H = m.half_edges();
    std::vector<int> label(static_cast<std::size_t>(H), -1), order;
    order.reserve(static_cast<std::size_t>(H));
    auto visit = [&](int h) {
        int x = h;
        do {
            label[static_cast<std::size_t>(x)] = static_cast<int>(order.size());
            order.push_back(x);
            x = m.next(x);
        } while (x != h);
    };
    visit(r);
    for (std::size_t i = 0; i < order.size(); ++i) {
        int o = m.opp(order[i]);
        if (label[static_cast<std::size_t>(o)] < 0) visit(o);
    }
    return order;
}

// Code of the map rooted at r (marks included, in their order). Equal codes <=> isomorphic rooted marked maps.
inline std::vector<int> rooted_code(const RotationMap& m, int r) {
    const int H = m.half_edges();
    std::vector<int> order = bfs_order(m, r), label(static_cast<std::size_t>(H));
    for (int i = 0; i < H; ++i) label[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    std::vector<int> code;
    code.reserve(static_cast<std::size_t>(2 * H) + m.marks().size() + 1);
    code.push_back(H);
    for (int h : order) code.push_back(label[static_cast<std::size_t>(m.next(h))]);
    for (int h : order) code.push_back(label[static_cast<std::size_t>(m.opp(h))]);
    for (int v : m.marks()) {
        int h0 = m.some_half_edge(v), best = H, x = h0;
        do {
            best = std::min(best, label[static_cast<std::size_t>(x)]);
            x = m.next(x);
        } while (x != h0);
        code.push_back(best);
    }
    return code;
}

// Unrooted canonical form: the smallest rooted code over all roots.
inline std::vector<int> canonical_code(const RotationMap& m) {
    if (m.half_edges() == 0) return {0, static_cast<int>(m.marks().size())};
    std::vector<int> best;
    for (int r = 0; r < m.half_edges(); ++r) {
        auto c = rooted_code(m, r);
        if (best.empty() || c < best) best = std::move(c);
    }
    return best;
}

// Rebuilds the map in breadth-first labelling from r, rooted at label 0.
inline RotationMap canonical_rooted(const RotationMap& m, int r) {
    const int H = m.half_edges();
    std::vector<int> order = bfs_order(m, r), label(static_cast<std::size_t>(H));
    for (int i = 0; i < H; ++i) label[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;
    std::vector<int> nx(static_cast<std::size_t>(H)), op(static_cast<std::size_t>(H));
    for (int i = 0; i < H; ++i) {
        nx[static_cast<std::size_t>(i)] = label[static_cast<std::size_t>(m.next(order[static_cast<std::size_t>(i)]))];
        op[static_cast<std::size_t>(i)] = label[static_cast<std::size_t>(m.opp(order[static_cast<std::size_t>(i)]))];
    }
    RotationMap out(nx, op);
    std::vector<int> marks;
    for (int v : m.marks()) marks.push_back(out.vertex_of(label[static_cast<std::size_t>(m.some_half_edge(v))]));
    return RotationMap(std::move(nx), std::move(op), std::move(marks), 0);
}

// Number of orientation-preserving automorphisms fixing each mark.
inline int automorphism_count(const RotationMap& m) {
    if (m.half_edges() == 0) return 1;
    auto ref = rooted_code(m, 0);
    int n = 0;
    for (int r = 0; r < m.half_edges(); ++r)
        if (rooted_code(m, r) == ref) ++n;
    return n;
}

}  // namespace wcm::maps
