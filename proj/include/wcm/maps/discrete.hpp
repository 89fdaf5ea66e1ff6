#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "wcm/maps/enumerate.hpp"
#include "wcm/series/bivariate.hpp"

namespace wcm::maps {

// [z^F x^E] of the discrete two-point function at distance t, E <= max_E, from all rooted maps:
// each ordered pair of distinct vertices at graph distance t contributes 1/(2E).
inline series::BivariateSeries discrete_two_point_bruteforce(int max_E, int t) {
    if (max_E < 1 || max_E > kMaxEnumerationEdges)
        throw std::domain_error("discrete_two_point_bruteforce: max_E outside enumeration bound");
    if (t < 0) throw std::domain_error("discrete_two_point_bruteforce: t must be >= 0");
    series::BivariateSeries out(max_E, max_E);
    for (int E = 1; E <= max_E; ++E) {
        std::vector<long> count(static_cast<std::size_t>(E) + 2, 0);
        enumerate_maps(E, {}, [&](const RotationMap& m) {
            long c = 0;
            for (int v = 0; v < m.vertices(); ++v) {
                auto d = graph_distances(m, v);
                for (int w = 0; w < m.vertices(); ++w)
                    if (w != v && d[static_cast<std::size_t>(w)] == t) ++c;
            }
            count[static_cast<std::size_t>(m.faces())] += c;
        });
        for (int F = 1; F <= E + 1 && F <= max_E; ++F)
            if (count[static_cast<std::size_t>(F)])
                out.at(F, E) += series::Rational(count[static_cast<std::size_t>(F)]) / series::Rational(2 * E);
    }
    return out;
}

// ell(x) = sqrt(4 - 16 x)
inline double pushforward_ell(double x) {
    if (!(x > 0 && x < 0.25)) throw std::domain_error("pushforward: x must be in (0, 1/4)");
    return std::sqrt(4 - 16 * x);
}

// Per-unit-length weight of a chain after summing the dangling trees: (1 - sqrt(1-4x))^2/(4x).
inline double pushforward_rho(double x) {
    if (!(x > 0 && x <= 0.25)) throw std::domain_error("pushforward: x must be in (0, 1/4]");
    double c = 1 - std::sqrt(1 - 4 * x);
    return c * c / (4 * x);
}

// Measure of all maps whose core is a fixed map with E_core edges: C(x)^{2 E_core} x^{E_core} / |Aut|,
// C the rooted tree generating function.
inline double core_preimage_weight(int core_edges, int aut, double x) {
    double C = (1 - std::sqrt(1 - 4 * x)) / (2 * x);
    return std::pow(C * C * x, core_edges) / aut;
}

// Scaled pushforward of the map measure onto a kernel shape with E edges, integrated against a product
// test function prod_e f_e(L_e): ell^N / |Aut| * prod_e sum_{k >= 1} rho^k f_e(k ell), N = 3F + 2n - 6.
inline double pushforward_expectation(int N, int aut, double x, const std::vector<std::function<double(double)>>& f) {
    const double ell = pushforward_ell(x), rho = pushforward_rho(x);
    double total = std::pow(ell, N - static_cast<int>(f.size())) / aut;
    for (const auto& fe : f) {
        double s = 0, w = rho;
        for (long k = 1; w > 1e-18; ++k, w *= rho) s += w * fe(k * ell);
        total *= ell * s;
    }
    return total;
}

}  // namespace wcm::maps
