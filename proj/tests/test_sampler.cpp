#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "wcm/experiments/stats.hpp"
#include "wcm/maps/measure.hpp"
#include "wcm/sampler/exact_sampler.hpp"
#include "wcm/sampler/flip_chain.hpp"

using namespace wcm::sampler;
using wcm::experiments::chi_square_gof;
using wcm::experiments::chi_square_two_sample;
using wcm::maps::canonical_code;
using wcm::maps::rooted_code;

namespace {

std::map<std::vector<int>, int> rooted_index(int F) {
    std::map<std::vector<int>, int> idx;
    for (const auto& m : cubic_table(F)) idx.emplace(rooted_code(m, 0), static_cast<int>(idx.size()));
    return idx;
}

}  // namespace

TEST(ExactSampler, UniformOverRootedCubicMaps) {
    for (int F : {3, 4}) {
        auto idx = rooted_index(F);
        const int N = 100000, K = static_cast<int>(idx.size());
        std::vector<std::uint64_t> counts(static_cast<std::size_t>(K));
        Rng rng = make_rng(11, 0, static_cast<std::uint64_t>(F));
        for (int i = 0; i < N; ++i) ++counts[static_cast<std::size_t>(idx.at(rooted_code(exact_sample(F, {}, rng), 0)))];
        const double p = 1.0 / K, sd = std::sqrt(N * p * (1 - p));
        for (auto c : counts) EXPECT_LT(std::abs(static_cast<double>(c) - N * p), 4 * sd);
        EXPECT_GT(chi_square_gof(counts, std::vector<double>(static_cast<std::size_t>(K), p)).p_value, 0.001);
    }
    Rng rng;
    EXPECT_THROW(exact_sample(6, {}, rng), std::domain_error);
    EXPECT_THROW(exact_sample(2, {}, rng), std::domain_error);
}

TEST(ExactSampler, SeededReproducibility) {
    Rng a = make_rng(5, 1, 2), b = make_rng(5, 1, 2), c = make_rng(5, 2, 1);
    bool differs = false;
    for (int i = 0; i < 50; ++i) {
        auto x = exact_sample(5, {2, 2}, a), y = exact_sample(5, {2, 2}, b), z = exact_sample(5, {2, 2}, c);
        EXPECT_EQ(x, y);
        differs |= !(x == z);
    }
    EXPECT_TRUE(differs);
}

TEST(ExactSampler, MarkedFamiliesHaveTheRightShape) {
    Rng rng = make_rng(3);
    for (int F = 3; F <= 5; ++F) {
        auto m2 = exact_sample(F, {2, 2}, rng);
        EXPECT_EQ(m2.edges(), 3 * F - 4);
        EXPECT_EQ(m2.faces(), F);
        for (int v : m2.marks()) EXPECT_EQ(m2.degree(v), 2);
        auto m1 = exact_sample(F, {1, 1}, rng);
        EXPECT_EQ(m1.edges(), 3 * F - 2);
        EXPECT_EQ(m1.faces(), F);
        for (int v : m1.marks()) EXPECT_EQ(m1.degree(v), 1);
        auto m3 = exact_sample(F, {3, 1}, rng);
        EXPECT_EQ(m3.degree(m3.marks()[0]), 3);
        EXPECT_EQ(m3.degree(m3.marks()[1]), 1);
        for (int v = 0; v < m3.vertices(); ++v)
            if (!m3.is_marked(v)) {
                EXPECT_EQ(m3.degree(v), 3);
            }
    }
}

TEST(ExactSampler, MarkedLeavesFollowTheMapMeasure) {
    // F = 3, two marked leaves: unrooted classes weighted by 1/|Aut|, from enumeration.
    const int F = 3, E = 3 * F - 2;
    std::map<std::vector<int>, double> weight;
    wcm::maps::enumerate_maps(E, {{1, 3}, {}}, [&](const RotationMap& m) {
        std::vector<int> leaves;
        for (int v = 0; v < m.vertices(); ++v)
            if (m.degree(v) == 1) leaves.push_back(v);
        if (leaves.size() != 2) return;
        for (auto mk : {std::vector<int>{leaves[0], leaves[1]}, std::vector<int>{leaves[1], leaves[0]}})
            weight[canonical_code(m.with_marks(mk))] += 1.0 / (2 * E);
    });
    double total = 0;
    for (auto& [c, w] : weight) total += w;
    EXPECT_NEAR(total, wcm::maps::measure(wcm::maps::Family::univalent, F, 2).value.get_d(), 1e-12);
    std::map<std::vector<int>, int> idx;
    std::vector<double> probs;
    for (auto& [c, w] : weight) {
        idx.emplace(c, static_cast<int>(idx.size()));
        probs.push_back(w / total);
    }
    std::vector<std::uint64_t> counts(probs.size());
    Rng rng = make_rng(17);
    for (int i = 0; i < 100000; ++i) {
        auto m = exact_sample(F, {1, 1}, rng);
        ++counts[static_cast<std::size_t>(idx.at(canonical_code(m.with_root(-1))))];
    }
    EXPECT_GT(chi_square_gof(counts, probs).p_value, 0.001);
}

TEST(FlipChain, InitialMapsAreCubic) {
    for (int F = 3; F <= 40; ++F) {
        auto m = initial_cubic_map(F);
        EXPECT_EQ(m.faces(), F);
        for (int v = 0; v < m.vertices(); ++v) EXPECT_EQ(m.degree(v), 3);
    }
    EXPECT_THROW(initial_cubic_map(2), std::domain_error);
}

TEST(FlipChain, InvariantsAndInverseFlip) {
    Rng rng = make_rng(23);
    for (int F : {4, 7, 30}) {
        FlipChain chain(initial_cubic_map(F));
        for (int i = 0; i < 2000; ++i) {
            auto before = chain.next_permutation();
            int h = uniform_int(rng, 2 * chain.edges()), dir = uniform_int(rng, 2) ? 1 : -1;
            if (chain.flip(h, dir)) {
                auto m = chain.map();  // validates connectivity and genus
                EXPECT_EQ(m.faces(), F);
                for (int v = 0; v < m.vertices(); ++v) ASSERT_EQ(m.degree(v), 3);
                // the reverse proposal (same edge, opposite direction) undoes the move
                EXPECT_TRUE(chain.flip(h, -dir));
                EXPECT_EQ(chain.next_permutation(), before);
                chain.flip(h, dir);
            } else {
                EXPECT_EQ(chain.next_permutation(), before);
            }
        }
        chain.run(1000000, rng);
        EXPECT_EQ(chain.map().faces(), F);
        EXPECT_GT(chain.acceptance_rate(), 0.5);
    }
}

TEST(FlipChain, UniformOverRootedClassesAtFourFaces) {
    auto idx = rooted_index(4);
    std::vector<std::uint64_t> counts(idx.size());
    Rng rng = make_rng(29);
    FlipChain chain(initial_cubic_map(4));
    chain.run(10000, rng);
    const int N = 100000;
    for (int i = 0; i < N; ++i) {
        chain.run(100, rng);
        ++counts[static_cast<std::size_t>(idx.at(rooted_code(chain.map(), 0)))];
    }
    const double p = 1.0 / static_cast<double>(idx.size()), sd = std::sqrt(N * p * (1 - p));
    for (auto c : counts) EXPECT_LT(std::abs(static_cast<double>(c) - N * p), 4 * sd);
}

TEST(FlipChain, AgreesWithExactSampler) {
    for (int F : {4, 5}) {
        auto idx = rooted_index(F);
        std::vector<std::uint64_t> a(idx.size()), b(idx.size());
        Rng rng = make_rng(31, 0, static_cast<std::uint64_t>(F));
        const int N = 100000;
        for (int i = 0; i < N; ++i) ++a[static_cast<std::size_t>(idx.at(rooted_code(exact_sample(F, {}, rng), 0)))];
        FlipChain chain(initial_cubic_map(F));
        chain.run(10000ULL * static_cast<std::uint64_t>(F), rng);
        for (int i = 0; i < N; ++i) {
            chain.run(10ULL * static_cast<std::uint64_t>(chain.edges()), rng);
            ++b[static_cast<std::size_t>(idx.at(rooted_code(chain.map(), 0)))];
        }
        EXPECT_GT(chi_square_two_sample(a, b).p_value, 0.001) << F;
    }
}

TEST(Lengths, ExponentialMoments) {
    Rng rng = make_rng(37);
    auto m = initial_cubic_map(1000);
    double s = 0, s2 = 0;
    long n = 0;
    while (n < 1000000) {
        auto wm = assign_lengths(m, rng);
        for (double l : wm.lengths) {
            s += l;
            s2 += l * l;
            ++n;
        }
    }
    double mean = s / n, var = s2 / n - mean * mean;
    EXPECT_LT(std::abs(mean - 1), 4 / std::sqrt(static_cast<double>(n)));
    EXPECT_LT(std::abs(var - 1), 4 * std::sqrt(8.0 / n));
    Rng a = make_rng(1), b = make_rng(1);
    EXPECT_EQ(assign_lengths(m, a).lengths, assign_lengths(m, b).lengths);
}

TEST(Insertion, BivalentSubdivisionAndInverse) {
    Rng rng = make_rng(41);
    for (const auto& m : cubic_table(4)) {
        for (int e = 0; e < m.edges(); ++e) {
            auto x = insert_marked_bivalent(m, e);
            EXPECT_EQ(x.edges(), m.edges() + 1);
            EXPECT_EQ(x.vertices(), m.vertices() + 1);
            EXPECT_EQ(x.faces(), m.faces());
            EXPECT_EQ(x.degree(x.marks().back()), 2);
            EXPECT_EQ(smooth_bivalent(x, x.marks().back()), m);
        }
        auto wm = assign_lengths(m, rng);
        auto wx = insert_marked_bivalent(wm, 2, rng);
        double before = 0, after = 0;
        for (double l : wm.lengths) before += l;
        for (double l : wx.lengths) after += l;
        EXPECT_NEAR(after, before, 1e-12);
    }
    EXPECT_THROW(insert_marked_bivalent(cubic_table(3)[0], 3), std::out_of_range);
}
