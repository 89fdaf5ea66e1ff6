#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "wcm/analytic/eden_length.hpp"
#include "wcm/experiments/estimators.hpp"
#include "wcm/experiments/runner.hpp"
#include "wcm/maps/measure.hpp"

using namespace wcm;
using namespace wcm::experiments;

TEST(Accumulator, MergeIsOrderInsensitive) {
    auto rng = sampler::make_rng(3);
    std::vector<double> xs(1000);
    for (double& x : xs) x = sampler::exp1(rng);
    Accumulator all, a, b, c;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        all.add(xs[i]);
        (i % 3 == 0 ? a : i % 3 == 1 ? b : c).add(xs[i]);
    }
    Accumulator ab = a, ca = c;
    ab.merge(b).merge(c);
    ca.merge(a).merge(b);
    EXPECT_EQ(ab.n, all.n);
    EXPECT_NEAR(ab.mean(), all.mean(), 1e-12);
    EXPECT_NEAR(ca.mean(), all.mean(), 1e-12);
    EXPECT_NEAR(ab.variance(), all.variance(), 1e-10);
    EXPECT_NEAR(all.std_error(), std::sqrt(all.variance() / 1000), 1e-15);
}

TEST(Binned, CountsCoverSamples) {
    std::vector<double> xs{0.0, 0.5, 1.0, 2.0, 3.9, 4.0};
    auto b = BinnedDistribution::from_samples(xs, 4);
    ASSERT_EQ(b.edges.size(), 5u);
    EXPECT_DOUBLE_EQ(b.edges.front(), 0.0);
    EXPECT_DOUBLE_EQ(b.edges.back(), 4.0);
    std::uint64_t total = 0;
    for (auto c : b.counts) total += c;
    EXPECT_EQ(total, xs.size());
    EXPECT_EQ(b.n, xs.size());
    EXPECT_EQ(b.counts.back(), 2u);  // the maximum lands in the last bin
    EXPECT_DOUBLE_EQ(b.cdf_at(4), 1.0);
    EXPECT_THROW(b.add(4.5), std::out_of_range);

    auto c = b;
    c.merge(b);
    EXPECT_EQ(c.n, 2 * b.n);
    EXPECT_DOUBLE_EQ(c.cdf_at(2), b.cdf_at(2));
    auto d = BinnedDistribution::from_samples({1.0}, 4);
    EXPECT_THROW(c.merge(d), std::invalid_argument);
}

TEST(Binned, KsSeparatesLaws) {
    auto rng = sampler::make_rng(11);
    std::vector<double> xs(20000);
    for (double& x : xs) x = sampler::exp1(rng);
    auto b = BinnedDistribution::from_samples(xs, 500);
    auto exp1_cdf = [](double t) { return 1 - std::exp(-t); };
    auto exp2_cdf = [](double t) { return 1 - std::exp(-2 * t); };
    EXPECT_LT(ks_statistic(b, exp1_cdf), ks_threshold_1pct(xs.size()));
    EXPECT_GT(ks_statistic(b, exp2_cdf), 0.2);
}

TEST(TwoPoint, SingleEdgeIsExponential) {
    // F = 1 with two leaves: a single edge, so d(v1, v2) ~ Exp(1)
    auto ref = two_point_reference(1, 1, 1);
    for (double t : {0.1, 1.0, 3.0}) EXPECT_NEAR(ref.cdf(t), 1 - std::exp(-t), 1e-12);
    auto rng = sampler::make_rng(5);
    auto xs = sample_two_point_distances(1, 1, 1, 2000, rng);
    Accumulator a;
    for (double x : xs) a.add(x);
    EXPECT_NEAR(a.mean(), 1.0, 4 * a.std_error());
}

TEST(TwoPoint, ReferenceMassIsFamilyMeasure) {
    for (int F : {2, 3, 4})
        for (auto [d1, d2] : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {2, 2}, {1, 3}, {3, 3}}) {
            if (2 * F - d1 - d2 < 0 || (2 * F - d1 - d2 + d1 + d2) % 2) continue;
            auto ref = two_point_reference(F, d1, d2);
            EXPECT_EQ(ref.mass, maps::measure({d1, d2}, F).value) << F << " " << d1 << d2;
        }
}

TEST(TwoPoint, EmpiricalLawMatchesReference) {
    for (auto [F, d1, d2] : std::vector<std::tuple<int, int, int>>{{2, 1, 1}, {2, 2, 2}, {3, 1, 2}, {4, 3, 3}}) {
        auto rng = sampler::make_rng(100 + F, d1, d2);
        auto b = estimate_two_point(F, d1, d2, 20000, 400, rng);
        auto ref = two_point_reference(F, d1, d2);
        EXPECT_LT(ks_statistic(b, [&](double t) { return ref.cdf(t); }), ks_threshold_1pct(b.n)) << F << d1 << d2;
    }
}

TEST(TwoPoint, EmptyFamilyRejected) {
    EXPECT_THROW(TwoMarkSource(1, 3, 3), std::domain_error);
    EXPECT_THROW(TwoMarkSource(3, 4, 1), std::domain_error);
}

TEST(SmallFamily, EntriesCarryOrderedMarks) {
    for (auto [d1, d2] : std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {1, 3}, {2, 1}}) {
        const auto& fam = detail::small_family(2, d1, d2);
        ASSERT_FALSE(fam.empty());
        for (const auto& m : fam) {
            ASSERT_EQ(m.marks().size(), 2u);
            EXPECT_EQ(m.degree(m.marks()[0]), d1);
            EXPECT_EQ(m.degree(m.marks()[1]), d2);
            EXPECT_EQ(m.faces(), 2);
        }
    }
}

TEST(EdenLength, ZeroWeightExploresEverything) {
    for (int F : {3, 4, 5}) {
        auto rng = sampler::make_rng(1);
        auto r = estimate_eden_length(F, 0.0, 200, rng);
        EXPECT_DOUBLE_EQ(r.estimate, 3 * (F - 2) + 1);
        EXPECT_DOUBLE_EQ(r.std_error, 0.0);
    }
}

TEST(EdenLength, MatchesExactExpectation) {
    auto rng = sampler::make_rng(8);
    for (double w : {0.5, 1.0}) {
        auto r = estimate_eden_length(4, w, 40000, rng);
        double exact = analytic::expected_eden_length_exact(4, series::Rational(w)).get_d();
        EXPECT_NEAR(r.estimate, exact, 4 * r.std_error) << w;
    }
}

TEST(Geodesic, RatioBinsRejectAllEmpty) {
    std::vector<PairSample> xs{{5.0, 4, 3, 1}};
    EXPECT_THROW(ratio_by_bin(xs, {10.0, 11.0}), std::domain_error);
    auto r = ratio_by_bin(xs, {4.0, 6.0, 7.0});
    EXPECT_DOUBLE_EQ(r[0].estimate, 0.8);
    EXPECT_EQ(r[1].n, 0u);
}

TEST(Geodesic, ChainAndExactSamplerAgreeOnVertexDensity) {
    // F = 3 has two vertices and no interior geodesic vertices, so compare at F = 5
    auto r1 = sampler::make_rng(21), r2 = sampler::make_rng(22);
    CubicMapSource exact(5), chain(5, {200, 10}, true);
    ASSERT_TRUE(exact.exact());
    ASSERT_FALSE(chain.exact());
    auto a = vertex_density(geodesic_pair_samples(exact, 20000, 1, r1));
    auto b = vertex_density(geodesic_pair_samples(chain, 20000, 1, r2));
    double se = std::hypot(a.density.std_error, b.density.std_error);
    EXPECT_GT(a.density.estimate, 0.0);
    EXPECT_NEAR(a.density.estimate, b.density.estimate, 4 * se);
    Accumulator ga, gb;
    for (const auto& s : geodesic_pair_samples(exact, 5000, 2, r1)) ga.add(s.graph);
    for (const auto& s : geodesic_pair_samples(chain, 5000, 2, r2)) gb.add(s.graph);
    EXPECT_NEAR(ga.mean(), gb.mean(), 4 * std::hypot(ga.std_error(), gb.std_error()));
}

TEST(Geodesic, PairInvariants) {
    auto rng = sampler::make_rng(4);
    for (const auto& s : geodesic_pair_samples(40, 50, 5, rng)) {
        EXPECT_GT(s.T, 0.0);
        EXPECT_GE(s.graph, 1);
        EXPECT_GE(s.interior + 1, s.graph);  // the geodesic has at least as many edges as hops
        EXPECT_LE(s.interior_first, s.interior);
    }
}

TEST(Config, JsonRoundTripAndDigest) {
    ExperimentConfig c;
    c.experiment = "eden_length";
    c.F = 4;
    c.w = {0.0, 0.5};
    c.seed = 77;
    auto j = c.to_json();
    auto d = ExperimentConfig::from_json(j);
    EXPECT_EQ(d.to_json(), j);
    EXPECT_EQ(d.digest(), c.digest());
    d.workers = 8;
    EXPECT_EQ(d.digest(), c.digest());
    d.seed = 78;
    EXPECT_NE(d.digest(), c.digest());
    auto bad = j;
    bad["nonsense"] = 1;
    EXPECT_THROW(ExperimentConfig::from_json(bad), std::invalid_argument);
    auto scalar_w = j;
    scalar_w["w"] = 2.0;
    EXPECT_EQ(ExperimentConfig::from_json(scalar_w).w, std::vector<double>{2.0});
}

TEST(Config, ValidationNamesPrecondition) {
    ExperimentConfig c;
    c.F = 0;
    try {
        c.validate();
        FAIL();
    } catch (const std::exception& e) {
        EXPECT_NE(std::string(e.what()).find("F"), std::string::npos);
    }
    c = {};
    c.experiment = "nope";
    EXPECT_ANY_THROW(c.validate());
    c = {};
    c.N = 0;
    EXPECT_ANY_THROW(c.validate());
}

TEST(Runner, StreamsAreDeterministicAcrossWorkerCounts) {
    ExperimentConfig c;
    c.deterministic = true;
    c.chunks = 6;
    c.seed = 9;
    std::vector<std::vector<double>> runs;
    for (int W : {1, 2, 3}) {
        c.workers = W;
        auto parts = run_streams<std::vector<double>>(c, 1000, [](Rng& rng, long n, int) {
            std::vector<double> v;
            for (long i = 0; i < n; ++i) v.push_back(sampler::uniform01(rng));
            return v;
        });
        ASSERT_EQ(parts.size(), 6u);
        std::vector<double> flat;
        for (auto& p : parts) flat.insert(flat.end(), p.begin(), p.end());
        EXPECT_EQ(flat.size(), 1000u);
        runs.push_back(flat);
    }
    EXPECT_EQ(runs[0], runs[1]);
    EXPECT_EQ(runs[0], runs[2]);
}

TEST(Runner, ExceptionsPropagate) {
    ExperimentConfig c;
    c.workers = 2;
    EXPECT_THROW(run_streams<int>(c, 10, [](Rng&, long, int s) -> int {
                     if (s == 1) throw std::domain_error("boom");
                     return 0;
                 }),
                 std::domain_error);
}

TEST(Runner, ExperimentOutputIsReproducible) {
    ExperimentConfig c;
    c.experiment = "two_point";
    c.F = 3;
    c.degrees = {2, 2};
    c.N = 5000;
    c.bins = 50;
    c.deterministic = true;
    c.chunks = 4;
    std::string s[2];
    for (int W : {1, 2}) {
        c.workers = W;
        auto out = run_experiment(c);
        std::ostringstream os;
        out.table.write_csv(os);
        s[W - 1] = os.str();
        EXPECT_TRUE(out.summary["pass"].get<bool>());
    }
    EXPECT_EQ(s[0], s[1]);
    EXPECT_EQ(s[0].rfind("# experiment two_point", 0), 0u);
}

TEST(Runner, TableCsvLayout) {
    Table t;
    t.comments = {"a"};
    t.header = {"x", "y"};
    t.add_row({"1", "2"});
    std::ostringstream os;
    t.write_csv(os);
    EXPECT_EQ(os.str(), "# a\nx,y\n1,2\n");
    EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
