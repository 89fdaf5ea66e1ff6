#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wcm/experiments/stats.hpp"
#include "wcm/fpp/eden.hpp"
#include "wcm/fpp/metric.hpp"
#include "wcm/maps/enumerate.hpp"
#include "wcm/sampler/exact_sampler.hpp"
#include "wcm/sampler/flip_chain.hpp"
#include "wcm/series/two_point_series.hpp"

namespace wcm::experiments {

using maps::RotationMap;
using sampler::Rng;

// Running sums; merging is associative and commutative.
struct Accumulator {
    std::uint64_t n = 0;
    double sum = 0, sumsq = 0;

    void add(double x) {
        ++n;
        sum += x;
        sumsq += x * x;
    }
    Accumulator& merge(const Accumulator& o) {
        n += o.n;
        sum += o.sum;
        sumsq += o.sumsq;
        return *this;
    }
    double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
    double variance() const {
        if (n < 2) return 0.0;
        double m = mean();
        return std::max(0.0, (sumsq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1));
    }
    double std_error() const { return n ? std::sqrt(variance() / static_cast<double>(n)) : 0.0; }
};

struct EstimatorResult {
    double estimate = 0;
    double std_error = 0;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    std::string config_digest;

    static EstimatorResult from(const Accumulator& a, std::uint64_t seed = 0, std::string digest = {}) {
        return {a.mean(), a.std_error(), a.n, seed, std::move(digest)};
    }
};

struct BinnedDistribution {
    std::vector<double> edges;  // nbins + 1 increasing values
    std::vector<std::uint64_t> counts;
    std::uint64_t n = 0;  // normalization: total count

    // Equal-width bins over [0, max sample].
    static BinnedDistribution from_samples(const std::vector<double>& xs, int nbins) {
        if (nbins < 1) throw std::domain_error("binned distribution: nbins must be >= 1");
        if (xs.empty()) throw std::domain_error("binned distribution: no samples");
        double hi = *std::max_element(xs.begin(), xs.end());
        if (!(hi > 0)) hi = 1;
        BinnedDistribution b;
        for (int i = 0; i <= nbins; ++i) b.edges.push_back(hi * i / nbins);
        b.counts.assign(static_cast<std::size_t>(nbins), 0);
        for (double x : xs) b.add(x);
        return b;
    }

    int bins() const { return static_cast<int>(counts.size()); }

    void add(double x) {
        if (x < edges.front() || x > edges.back()) throw std::out_of_range("binned distribution: sample outside bins");
        auto it = std::upper_bound(edges.begin(), edges.end(), x);
        auto i = static_cast<std::size_t>(std::min<std::ptrdiff_t>(it - edges.begin() - 1, bins() - 1));
        ++counts[i];
        ++n;
    }

    BinnedDistribution& merge(const BinnedDistribution& o) {
        if (edges != o.edges) throw std::invalid_argument("binned distribution: bin edges differ");
        for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
        n += o.n;
        return *this;
    }

    // Empirical CDF at edges[i].
    double cdf_at(int i) const {
        std::uint64_t c = 0;
        for (int j = 0; j < i; ++j) c += counts[static_cast<std::size_t>(j)];
        return n ? static_cast<double>(c) / static_cast<double>(n) : 0.0;
    }
};

// sup over bin edges of |empirical CDF - reference CDF|.
inline double ks_statistic(const BinnedDistribution& b, const std::function<double(double)>& cdf) {
    if (b.n == 0) throw std::domain_error("ks_statistic: empty distribution");
    double d = 0;
    std::uint64_t c = 0;
    for (int i = 0; i <= b.bins(); ++i) {
        d = std::max(d, std::abs(static_cast<double>(c) / static_cast<double>(b.n) - cdf(b.edges[static_cast<std::size_t>(i)])));
        if (i < b.bins()) c += b.counts[static_cast<std::size_t>(i)];
    }
    return d;
}

// ---------------------------------------------------------------------------------------------
// Map sources

// Uniform rooted cubic maps with F faces: table lookup for F <= 5, otherwise a flip chain that is
// burnt in on the first draw and thinned between draws.
class CubicMapSource {
public:
    explicit CubicMapSource(int F, sampler::FlipChainConfig cfg = {}, bool force_chain = false)
        : F_(F), cfg_(cfg), force_chain_(force_chain) {
        if (F < 3) throw std::domain_error("cubic maps need F >= 3");
    }

    int faces() const { return F_; }
    bool exact() const { return !force_chain_ && F_ <= sampler::kExactSamplerMaxFaces; }

    RotationMap next(Rng& rng) {
        if (exact()) {
            const auto& t = sampler::cubic_table(F_);
            return t[static_cast<std::size_t>(sampler::uniform_int(rng, static_cast<int>(t.size())))];
        }
        if (!chain_) {
            chain_ = std::make_unique<sampler::FlipChain>(sampler::initial_cubic_map(F_));
            chain_->run(cfg_.burn_in_per_face * static_cast<std::uint64_t>(F_), rng);
        } else {
            chain_->run(cfg_.thin_per_edge * static_cast<std::uint64_t>(chain_->edges()), rng);
        }
        return chain_->map();
    }

private:
    int F_;
    sampler::FlipChainConfig cfg_;
    bool force_chain_;
    std::unique_ptr<sampler::FlipChain> chain_;
};

namespace detail {

inline int unmarked_count(int F, int d1, int d2) { return 2 * F - d1 - d2; }

// All rooted maps of a small family with the two marks placed in every admissible ordered way.
inline const std::vector<RotationMap>& small_family(int F, int d1, int d2) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int>, std::vector<RotationMap>> cache;
    std::lock_guard lock(mu);
    auto key = std::make_tuple(F, d1, d2);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    const int unmarked = unmarked_count(F, d1, d2);
    const int E = (d1 + d2 + 3 * unmarked) / 2;
    std::vector<int> degrees{3};
    for (int d : {d1, d2})
        if (std::find(degrees.begin(), degrees.end(), d) == degrees.end()) degrees.push_back(d);
    std::vector<RotationMap> out;
    maps::enumerate_maps(E, {degrees, {}}, [&](const RotationMap& m) {
        for (int a = 0; a < m.vertices(); ++a)
            for (int b = 0; b < m.vertices(); ++b) {
                if (a == b || m.degree(a) != d1 || m.degree(b) != d2) continue;
                bool ok = true;
                for (int v = 0; v < m.vertices(); ++v)
                    if (v != a && v != b && m.degree(v) != 3) ok = false;
                if (ok) out.push_back(m.with_marks({a, b}));
            }
    });
    return cache.emplace(key, std::move(out)).first->second;
}

}  // namespace detail

// Map with two marked vertices of degrees (d1, d2) and F faces, uniform in the measure nu.
class TwoMarkSource {
public:
    TwoMarkSource(int F, int d1, int d2, sampler::FlipChainConfig cfg = {}) : F_(F), d1_(d1), d2_(d2) {
        if (d1 < 1 || d1 > 3 || d2 < 1 || d2 > 3) throw std::domain_error("two-point: degrees must be 1, 2 or 3");
        if (F < 1 || detail::unmarked_count(F, d1, d2) < 0) throw std::domain_error("two-point: no maps in family");
        if (F >= 3) cubic_.emplace(F, cfg);
        else if (detail::small_family(F, d1, d2).empty()) throw std::domain_error("two-point: no maps in family");
    }

    RotationMap next(Rng& rng) {
        if (cubic_) return sampler::add_marks(cubic_->next(rng), {d1_, d2_}, rng);
        const auto& fam = detail::small_family(F_, d1_, d2_);
        return fam[static_cast<std::size_t>(sampler::uniform_int(rng, static_cast<int>(fam.size())))];
    }

private:
    int F_, d1_, d2_;
    std::optional<CubicMapSource> cubic_;
};

// ---------------------------------------------------------------------------------------------
// Two-point distribution

// Fixed-F reference: density [g^F] G^{(d1,d2)}(T), its total mass, and the normalized CDF.
struct TwoPointReference {
    series::ExpPoly density;
    series::Rational mass;
    double cdf(double T) const {
        if (T <= 0) return 0.0;
        return series::expoly_integrate_upto<double>(density, T) / mass.get_d();
    }
};

inline TwoPointReference two_point_reference(int F, int d1, int d2) {
    if (F < 1) throw std::domain_error("two-point reference: F must be >= 1");
    auto G = series::two_point_series(d1, d2, F);
    TwoPointReference r{G[F], 0};
    if (r.density.is_zero()) throw std::domain_error("two-point reference: no maps in family");
    r.mass = series::expoly_integrate(r.density);
    return r;
}

inline std::vector<double> sample_two_point_distances(int F, int d1, int d2, long N, Rng& rng,
                                                      sampler::FlipChainConfig cfg = {}) {
    TwoMarkSource src(F, d1, d2, cfg);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(std::max(0L, N)));
    for (long i = 0; i < N; ++i) {
        auto m = src.next(rng);
        auto wm = sampler::assign_lengths(m, rng);
        out.push_back(fpp::shortest_paths(wm, {m.marks()[0]}).dist[static_cast<std::size_t>(m.marks()[1])]);
    }
    return out;
}

// Empirical law of d(v1, v2) over marked maps with fresh Exp(1) lengths.
inline BinnedDistribution estimate_two_point(int F, int d1, int d2, long N, int bins, Rng& rng,
                                             sampler::FlipChainConfig cfg = {}) {
    return BinnedDistribution::from_samples(sample_two_point_distances(F, d1, d2, N, rng, cfg), bins);
}

// ---------------------------------------------------------------------------------------------
// Eden length

inline Accumulator eden_length_sums(int F, double w, long N, Rng& rng, sampler::FlipChainConfig cfg = {}) {
    CubicMapSource src(F, cfg);
    Accumulator acc;
    for (long i = 0; i < N; ++i) {
        auto m = src.next(rng);
        int root = m.root() >= 0 ? m.root() : 0;
        acc.add(fpp::eden_run_from_edge(m, m.edge_of(root), w, rng).k);
    }
    return acc;
}

// Mean Eden exploration length on uniform rooted cubic maps, started at the root edge.
inline EstimatorResult estimate_eden_length(int F, double w, long N, Rng& rng, sampler::FlipChainConfig cfg = {}) {
    return EstimatorResult::from(eden_length_sums(F, w, N, rng, cfg));
}

// ---------------------------------------------------------------------------------------------
// Geodesics on large maps

struct PairSample {
    double T;              // geodesic distance
    int graph;             // graph distance
    int interior;          // vertices strictly inside the geodesic
    int interior_first;    // of which at distance < T/2 from v1
};

// For each of n_maps cubic maps, one uniform source v1 and `pairs_per_map` uniform targets v2 != v1.
inline std::vector<PairSample> geodesic_pair_samples(CubicMapSource& src, long n_maps, int pairs_per_map, Rng& rng) {
    if (pairs_per_map < 1) throw std::domain_error("pairs_per_map must be >= 1");
    std::vector<PairSample> out;
    for (long i = 0; i < n_maps; ++i) {
        auto m = src.next(rng);
        auto wm = sampler::assign_lengths(m, rng);
        const int V = m.vertices();
        int v1 = sampler::uniform_int(rng, V);
        auto metric = fpp::shortest_paths(wm, {v1});
        auto hops = maps::graph_distances(m, v1);
        for (int j = 0; j < pairs_per_map; ++j) {
            int v2 = sampler::uniform_int(rng, V - 1);
            if (v2 >= v1) ++v2;
            PairSample s{metric.dist[static_cast<std::size_t>(v2)], hops[static_cast<std::size_t>(v2)], 0, 0};
            for (int v = v2; metric.pred[static_cast<std::size_t>(v)] >= 0;) {
                v = m.vertex_of(metric.pred[static_cast<std::size_t>(v)]);
                if (v == v1) break;
                ++s.interior;
                if (metric.dist[static_cast<std::size_t>(v)] < s.T / 2) ++s.interior_first;
            }
            out.push_back(s);
        }
    }
    return out;
}

inline std::vector<PairSample> geodesic_pair_samples(int F, long n_maps, int pairs_per_map, Rng& rng,
                                                     sampler::FlipChainConfig cfg = {}) {
    CubicMapSource src(F, cfg);
    return geodesic_pair_samples(src, n_maps, pairs_per_map, rng);
}

// Mean graph/geodesic distance ratio per T bin [edges[i], edges[i+1]).
inline std::vector<EstimatorResult> ratio_by_bin(const std::vector<PairSample>& xs, const std::vector<double>& edges) {
    if (edges.size() < 2) throw std::domain_error("ratio: need at least one bin");
    std::vector<Accumulator> acc(edges.size() - 1);
    for (const auto& s : xs) {
        auto it = std::upper_bound(edges.begin(), edges.end(), s.T);
        if (it == edges.begin() || it == edges.end()) continue;
        acc[static_cast<std::size_t>(it - edges.begin() - 1)].add(s.graph / s.T);
    }
    std::vector<EstimatorResult> out;
    bool any = false;
    for (const auto& a : acc) {
        out.push_back(EstimatorResult::from(a));
        any |= a.n > 0;
    }
    if (!any) throw std::domain_error("ratio: all bins are empty");
    return out;
}

inline std::vector<EstimatorResult> estimate_ratio_graph_geodesic(int F, const std::vector<double>& edges, long N,
                                                                  Rng& rng, int pairs_per_map = 10,
                                                                  sampler::FlipChainConfig cfg = {}) {
    long maps_needed = (N + pairs_per_map - 1) / pairs_per_map;
    return ratio_by_bin(geodesic_pair_samples(F, maps_needed, pairs_per_map, rng, cfg), edges);
}

struct VertexDensity {
    EstimatorResult density;      // mean of interior / T
    EstimatorResult first_half;   // mean of 2 * interior_first / T
    EstimatorResult second_half;  // mean of 2 * (interior - interior_first) / T
};

inline VertexDensity vertex_density(const std::vector<PairSample>& xs) {
    Accumulator all, a, b;
    for (const auto& s : xs) {
        all.add(s.interior / s.T);
        a.add(2.0 * s.interior_first / s.T);
        b.add(2.0 * (s.interior - s.interior_first) / s.T);
    }
    return {EstimatorResult::from(all), EstimatorResult::from(a), EstimatorResult::from(b)};
}

inline EstimatorResult estimate_vertex_density(int F, long N, Rng& rng, int pairs_per_map = 10,
                                               sampler::FlipChainConfig cfg = {}) {
    long maps_needed = (N + pairs_per_map - 1) / pairs_per_map;
    return vertex_density(geodesic_pair_samples(F, maps_needed, pairs_per_map, rng, cfg)).density;
}

}  // namespace wcm::experiments
