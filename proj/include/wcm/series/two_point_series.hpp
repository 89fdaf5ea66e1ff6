#pragma once

#include <stdexcept>
#include <vector>

#include "wcm/series/power_series.hpp"

namespace wcm::series {

// g-expansion of d^3/dT^3 log C_g(T) = 8 Sigma^3 sum_n n^2 beta^n e^{-2n Sigma T},
// with e^{-2n Sigma T} = e^{-nT} exp(-2n (Sigma - 1/2) T) expanded in g.
inline PowerSeriesG g1_series(int order) {
    PowerSeriesG out(order);
    if (order < 1) return out;
    RationalSeries sigma = sigma_series(order);
    RationalSeries beta = beta_series(order);
    RationalSeries delta = sigma - constant_series(order, Rational(1, 2));
    RationalSeries pref = sigma * sigma * sigma * Rational(8);

    std::vector<RationalSeries> dpow{constant_series(order, Rational(1))};
    for (int j = 1; j <= order; ++j) dpow.push_back(dpow.back() * delta);

    RationalSeries bn = constant_series(order, Rational(1));
    for (int n = 1; n <= order; ++n) {
        bn = bn * beta;
        RationalSeries an = pref * bn * Rational(n * n);
        Rational scale = 1;  // (-2n)^j / j!
        for (int j = 0; n + j <= order; ++j) {
            if (j > 0) scale *= Rational(-2 * n) / j;
            RationalSeries c = an * dpow[j];
            for (int p = n + j; p <= order; ++p)
                if (c[p] != 0) out[p].add_term(j, n, c[p] * scale);
        }
    }
    return out;
}

// Polynomial in D taking G^(1) to G^(d) for a single marked degree d <= 3 (loop equation with empty sum).
inline std::vector<Rational> degree_operator(int d) {
    switch (d) {
        case 1: return {Rational(1)};
        case 2: return {Rational(1, 2), Rational(1, 2)};
        case 3: return {Rational(1, 3), Rational(1, 2), Rational(1, 6)};  // (2+D)(1+D)/6
        default: throw std::domain_error("exact series supports marked degrees 1..3");
    }
}

inline std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
    std::vector<Rational> r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline PowerSeriesG two_point_series(int d1, int d2, int order) {
    auto op = poly_mul(degree_operator(d1), degree_operator(d2));
    return g1_series(order).map([&](const ExpPoly& f) { return apply_operator(f, op); });
}

// Density of marked local maxima: (1 - D) G^(2)/3.
inline PowerSeriesG max_series(int order) {
    return two_point_series(2, 2, order).map(
        [](const ExpPoly& f) { return apply_operator(f, {Rational(1, 3), Rational(-1, 3)}); });
}

}  // namespace wcm::series
