#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "wcm/fpp/eden.hpp"
#include "wcm/maps/builders.hpp"
#include "wcm/maps/enumerate.hpp"
#include "wcm/sampler/exact_sampler.hpp"

using namespace wcm::fpp;
using wcm::maps::collect_maps;
using wcm::maps::parallel_edge_map;
using wcm::maps::path_map;
using wcm::sampler::assign_lengths;
using wcm::sampler::cubic_table;
using wcm::sampler::make_rng;

namespace {

WeightedMapInstance weighted(const RotationMap& m, std::vector<double> L) { return WeightedMapInstance(m, std::move(L)); }

RotationMap single_loop() { return RotationMap({1, 0}, {1, 0}); }

// Minimum over all simple paths, by exhaustive depth-first search.
double brute_force_distance(const WeightedMapInstance& wm, int s, int t) {
    const auto& m = wm.map;
    double best = std::numeric_limits<double>::infinity();
    std::vector<char> on(static_cast<std::size_t>(m.vertices()), 0);
    std::function<void(int, double)> go = [&](int v, double d) {
        if (v == t) {
            best = std::min(best, d);
            return;
        }
        on[static_cast<std::size_t>(v)] = 1;
        for (int h = 0; h < m.half_edges(); ++h) {
            if (m.vertex_of(h) != v) continue;
            int u = m.vertex_of(m.opp(h));
            if (!on[static_cast<std::size_t>(u)]) go(u, d + wm.length_of(h));
        }
        on[static_cast<std::size_t>(v)] = 0;
    };
    go(s, 0.0);
    return best;
}

// Exact law of the stopped Eden sequence by recursion over all branches.
void eden_law(const EdenState& s, double w, double p, std::vector<int>& seq, std::map<std::vector<int>, double>& out) {
    const double f = static_cast<double>(s.frontier().size());
    if (f == 0) {
        out[seq] += p;
        return;
    }
    if (w > 0) out[seq] += p * w / (f + w);
    for (int h : s.frontier()) {
        EdenState t = s;
        t.explore(h);
        seq.push_back(s.map().edge_of(h));
        eden_law(t, w, p / (f + w), seq, out);
        seq.pop_back();
    }
}

}  // namespace

TEST(Metric, ParallelEdges) {
    auto wm = weighted(parallel_edge_map(3), {1.0, 2.5, 0.7});
    auto r = shortest_paths(wm, {0});
    EXPECT_DOUBLE_EQ(r.dist[1], 0.7);
    EXPECT_EQ(r.pred[1], 2);
    EXPECT_DOUBLE_EQ(edge_max_distance(wm, r, 1), 1.6);
    EXPECT_DOUBLE_EQ(edge_max_distance(wm, r, 0), 0.85);
    EXPECT_DOUBLE_EQ(edge_max_distance(wm, r, 2), 0.7);
    auto ex = fpp_exploration(wm, {0});
    EXPECT_EQ(ex.edges, (std::vector<int>{2, 0, 1}));
    EXPECT_EQ(ex.k, 3);
    auto lm = local_maxima(wm, 0);
    ASSERT_EQ(lm.size(), 2u);
    EXPECT_DOUBLE_EQ(lm[0].distance, 0.85);
    EXPECT_DOUBLE_EQ(lm[1].distance, 1.6);
    EXPECT_EQ(geodesic_vertex_count(wm, 0, 1), 0);
}

TEST(Metric, SingleEdgeAndLoop) {
    auto wm = weighted(path_map(1), {1.3});
    EXPECT_DOUBLE_EQ(shortest_paths(wm, {0}).dist[1], 1.3);
    EXPECT_EQ(fpp_exploration(wm, {0}).k, 1);
    EXPECT_EQ(geodesic_vertex_count(wm, 0, 1), 0);
    EXPECT_TRUE(local_maxima(wm, 0).empty());

    auto lw = weighted(single_loop(), {2.0});
    auto r = shortest_paths(lw, {0});
    EXPECT_DOUBLE_EQ(edge_max_distance(lw, r, 0), 1.0);
    auto lm = local_maxima(lw, 0);
    ASSERT_EQ(lm.size(), 1u);
    EXPECT_DOUBLE_EQ(lm[0].position, 1.0);
    EXPECT_DOUBLE_EQ(lm[0].distance, 1.0);
}

TEST(Metric, TreeEdgeMaxDistanceIsFarEnd) {
    auto wm = weighted(path_map(3), {0.4, 1.1, 0.3});
    auto r = shortest_paths(wm, {0});
    EXPECT_DOUBLE_EQ(edge_max_distance(wm, r, 1), r.dist[2]);
    EXPECT_EQ(geodesic_vertex_count(wm, 0, 3), 2);
    EXPECT_EQ(geodesic_half_edges(wm, r, 3).size(), 3u);
    EXPECT_TRUE(local_maxima(wm, r).empty());
}

TEST(Metric, AgreesWithPathEnumeration) {
    auto rng = make_rng(101);
    for (int E = 1; E <= 5; ++E) {
        for (const auto& m : collect_maps(E)) {
            auto wm = assign_lengths(m, rng);
            auto r = shortest_paths(wm, {0});
            for (int v = 0; v < m.vertices(); ++v) {
                double d = v == 0 ? 0.0 : brute_force_distance(wm, 0, v);
                ASSERT_NEAR(r.dist[static_cast<std::size_t>(v)], d, 1e-12);
            }
            for (int h = 0; h < m.half_edges(); ++h) {
                double du = r.dist[static_cast<std::size_t>(m.vertex_of(h))];
                double dv = r.dist[static_cast<std::size_t>(m.vertex_of(m.opp(h)))];
                ASSERT_LE(std::abs(du - dv), wm.length_of(h) + 1e-12);
            }
        }
    }
}

TEST(Metric, EqualLengthsGiveScaledGraphDistance) {
    for (int E = 1; E <= 5; ++E) {
        for (const auto& m : collect_maps(E)) {
            auto wm = weighted(m, std::vector<double>(static_cast<std::size_t>(E), 0.75));
            auto r = shortest_paths(wm, {0});
            auto g = wcm::maps::graph_distances(m, 0);
            for (int v = 0; v < m.vertices(); ++v)
                ASSERT_NEAR(r.dist[static_cast<std::size_t>(v)], 0.75 * g[static_cast<std::size_t>(v)], 1e-12);
        }
    }
}

TEST(Metric, LocalMaximaCountCycles) {
    auto rng = make_rng(103);
    for (int E = 1; E <= 6; ++E) {
        for (const auto& m : collect_maps(E)) {
            auto wm = assign_lengths(m, rng);
            int v = wcm::sampler::uniform_int(rng, m.vertices());
            auto r = shortest_paths(wm, {v});
            auto lm = local_maxima(wm, r);
            ASSERT_EQ(static_cast<int>(lm.size()), m.edges() - (m.vertices() - 1));
            for (const auto& x : lm) {
                ASSERT_GE(x.position, 0.0);
                ASSERT_LE(x.position, wm.lengths[static_cast<std::size_t>(x.edge)]);
                ASSERT_NEAR(x.distance, edge_max_distance(wm, r, x.edge), 1e-12);
            }
        }
    }
}

TEST(Exploration, PrefixInvariantsHold) {
    auto rng = make_rng(107);
    for (int E = 1; E <= 5; ++E) {
        for (const auto& m : collect_maps(E)) {
            std::vector<int> all(static_cast<std::size_t>(m.vertices()));
            std::iota(all.begin(), all.end(), 0);
            auto wm = assign_lengths(m, rng);
            for (const auto& V0 : {std::vector<int>{0}, all}) {
                auto rec = fpp_exploration(wm, V0);  // replay throws on a non-adjacent step
                ASSERT_EQ(rec.k, E);
                auto ed = eden_run(m, V0, 0.0, rng);
                ASSERT_EQ(ed.k, E);
                // recompute the frontier after each step of the Eden run
                EdenState s(m, V0);
                for (const auto& st : ed.trace) {
                    ASSERT_EQ(static_cast<int>(s.frontier().size()), st.frontier_size);
                    s.explore(st.half_edge);
                    std::set<int> expect, got(s.frontier().begin(), s.frontier().end());
                    for (int h = 0; h < m.half_edges(); ++h) {
                        if (s.edge_explored(m.edge_of(h))) {
                            ASSERT_TRUE(s.vertex_explored(m.vertex_of(h)));
                        } else if (s.vertex_explored(m.vertex_of(h))) {
                            expect.insert(h);
                        }
                    }
                    ASSERT_EQ(got, expect);
                }
            }
        }
    }
}

TEST(Eden, LimitsOfTheStoppingWeight) {
    auto rng = make_rng(109);
    for (const auto& m : cubic_table(4)) {
        EXPECT_EQ(eden_run(m, 0, 0.0, rng).k, m.edges());
        EXPECT_EQ(eden_run_from_edge(m, 0, 0.0, rng).k, m.edges() + 1);
        auto r = eden_run(m, 0, std::numeric_limits<double>::infinity(), rng);
        EXPECT_EQ(r.k, 0);
        EXPECT_TRUE(r.stopped);
    }
    EXPECT_THROW(eden_run(path_map(2), 0, -1.0, rng), std::domain_error);
    auto m3 = parallel_edge_map(3);
    for (int i = 0; i < 100; ++i) {
        EdenState s(m3, {0});
        s.explore(s.frontier()[static_cast<std::size_t>(wcm::sampler::uniform_int(rng, 3))]);
        EXPECT_TRUE(s.vertex_explored(1));
    }
}

TEST(Eden, TwoParallelEdgesFirstStepIsFair) {
    auto m = parallel_edge_map(2);
    auto rng = make_rng(113);
    const int N = 100000;
    int eden0 = 0, fpp0 = 0;
    for (int i = 0; i < N; ++i) {
        eden0 += eden_run(m, 0, 0.0, rng).edges[0] == 0;
        fpp0 += fpp_stopped_run(m, {0}, 0.0, rng).edges[0] == 0;
    }
    const double sd = std::sqrt(N * 0.25);
    EXPECT_LT(std::abs(eden0 - N / 2.0), 4 * sd);
    EXPECT_LT(std::abs(fpp0 - N / 2.0), 4 * sd);
}

TEST(Eden, SequenceLawMatchesExactRecursion) {
    auto rng = make_rng(127);
    const double w = 1.0;
    const int N = 100000;
    for (const auto& m : cubic_table(3)) {
        std::map<std::vector<int>, double> law;
        std::vector<int> seq;
        eden_law(EdenState(m, {0}), w, 1.0, seq, law);
        double total = 0;
        std::map<std::vector<int>, int> idx;
        std::vector<double> probs;
        for (auto& [s, p] : law) {
            total += p;
            idx.emplace(s, static_cast<int>(idx.size()));
            probs.push_back(p);
        }
        EXPECT_NEAR(total, 1.0, 1e-12);
        std::vector<std::uint64_t> ce(probs.size()), cf(probs.size());
        for (int i = 0; i < N; ++i) {
            ++ce[static_cast<std::size_t>(idx.at(eden_run(m, 0, w, rng).edges))];
            ++cf[static_cast<std::size_t>(idx.at(fpp_stopped_run(m, {0}, w, rng).edges))];
        }
        EXPECT_GT(wcm::experiments::chi_square_gof(ce, probs).p_value, 0.001);
        EXPECT_GT(wcm::experiments::chi_square_gof(cf, probs).p_value, 0.001);
    }
}

TEST(Eden, EquivalenceTestOnCubicMaps) {
    auto rng = make_rng(131);
    for (const auto& m : cubic_table(3)) EXPECT_GT(eden_fpp_equivalence_test(m, {0}, 1.0, 100000, rng).p_value, 0.001);
    EXPECT_THROW(eden_fpp_equivalence_test(cubic_table(3)[0], {0}, 1.0, 5, rng), std::domain_error);
}

TEST(Eden, ThreeProbabilitiesAgree) {
    auto rng = make_rng(137);
    const double w = 0.7;
    const int N = 200000;
    for (const auto& m : cubic_table(3)) {
        const int v1 = 0, v2 = 1;
        int reach = 0, join = 0;
        double sc = 0, sc2 = 0;
        for (int i = 0; i < N; ++i) {
            EdenState s(m, {v1});
            auto a = eden_run(m, v1, w, rng);
            for (const auto& st : a.trace)
                if (!st.stopped) s.explore(st.half_edge);
            reach += s.vertex_explored(v2);
            EdenState t(m, {v1, v2});
            auto b = eden_run(m, {v1, v2}, 2 * w, rng);
            for (const auto& st : b.trace)
                if (!st.stopped) t.explore(st.half_edge);
            join += t.connected(v1, v2);
            double d = shortest_paths(assign_lengths(m, rng), {v1}).dist[v2];
            double c = std::exp(-w * d);
            sc += c;
            sc2 += c * c;
        }
        double pa = static_cast<double>(reach) / N, pb = static_cast<double>(join) / N, pc = sc / N;
        double va = pa * (1 - pa) / N, vb = pb * (1 - pb) / N, vc = (sc2 / N - pc * pc) / N;
        EXPECT_LT(std::abs(pa - pc), 3 * std::sqrt(va + vc));
        EXPECT_LT(std::abs(pb - pc), 3 * std::sqrt(vb + vc));
    }
}

TEST(Eden, ConnectivityMatchesHalfDistance) {
    auto rng = make_rng(139);
    for (int E = 1; E <= 4; ++E) {
        for (const auto& m : collect_maps(E)) {
            auto wm = assign_lengths(m, rng);
            for (int v1 = 0; v1 < m.vertices(); ++v1)
                for (int v2 = v1 + 1; v2 < m.vertices(); ++v2) {
                    double d = brute_force_distance(wm, v1, v2);
                    for (int j = 0; j < 4; ++j) {
                        double T = wcm::sampler::exp1(rng);
                        auto rec = fpp_exploration(wm, {v1, v2}, T);
                        EdenState s(m, {v1, v2});
                        for (const auto& st : rec.trace)
                            if (!st.stopped) s.explore(st.half_edge);
                        ASSERT_EQ(s.connected(v1, v2), d < 2 * T);
                    }
                }
        }
    }
}

TEST(Eden, TraceCsv) {
    auto rng = make_rng(149);
    auto r = eden_run(cubic_table(3)[0], 0, 0.0, rng);
    std::ostringstream os;
    write_exploration_csv(os, r);
    std::istringstream is(os.str());
    std::string line;
    int rows = 0;
    std::getline(is, line);
    EXPECT_EQ(line, "step,half_edge,frontier_size,stopped");
    while (std::getline(is, line)) ++rows;
    EXPECT_EQ(rows, 3);
}
