#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "wcm/analytic/params.hpp"
#include "wcm/series/two_point_series.hpp"

namespace wcm::analytic {

// <k>_{F,w} as an exact rational function of w: prefactor * Laplace transform of [g^F] G^{(2)}.
struct EdenLengthFunction {
    int F = 0;
    series::Rational prefactor;
    series::ExpPoly coefficient;

    series::Rational operator()(const series::Rational& w) const {
        return prefactor * series::expoly_laplace(coefficient, w);
    }
    double operator()(double w) const {
        if (!(w >= 0)) throw std::domain_error("eden length: w must be >= 0");
        long double s = 0;
        for (const auto& [key, c] : coefficient.terms()) {
            long double f = 1;
            for (int i = 2; i <= key.k; ++i) f *= i;
            s += static_cast<long double>(c.get_d()) * f / std::pow(static_cast<long double>(w) + key.m, key.k + 1);
        }
        return static_cast<double>(static_cast<long double>(prefactor.get_d()) * s);
    }
};

inline EdenLengthFunction eden_length_function(int F) {
    if (F < 3) throw std::domain_error("expected_eden_length: F must be >= 3");
    static std::mutex mu;
    static std::map<int, EdenLengthFunction> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find(F); it != cache.end()) return it->second;
    using namespace series;
    EdenLengthFunction e;
    e.F = F;
    e.prefactor = ratio(pow2(0) * factorial(F) * double_factorial(F - 2), pow2(2 * F - 4) * double_factorial(3 * F - 6));
    e.coefficient = two_point_series(2, 2, F)[F];
    cache.emplace(F, e);
    return e;
}

inline series::Rational expected_eden_length_exact(int F, const series::Rational& w) {
    if (w < 0) throw std::domain_error("eden length: w must be >= 0");
    return eden_length_function(F)(w);
}

inline double expected_eden_length(int F, double w) { return eden_length_function(F)(w); }

// F -> infinity limit: p0(w)/w^4 - (144 sqrt3/35) w^3 (1+w)^2 e^{2 sqrt3 w} Ei(-2 sqrt3 w).
inline double expected_eden_length_infinite(double w) {
    if (!(w > 0)) throw std::domain_error("infinite-F eden length needs w > 0");
    const double s3 = kSqrt3;
    double w2 = w * w, w4 = w2 * w2;
    double p0 = (5 + 10 * w + 28 * w2 + 46 * w2 * w - 24 * w4 - 24 * w4 * w - 84 * w4 * w2 - 144 * w4 * w2 * w -
                 72 * w4 * w4 + 2 * s3 * w * (1 + w) * (1 + w) * (5 + 3 * w2 + 6 * w4)) /
                35;
    double x = 2 * s3 * w;
    double eei = std::exp(x) * std::expint(-x);
    return p0 / w4 - 144 * s3 / 35 * w2 * w * (1 + w) * (1 + w) * eei;
}

}  // namespace wcm::analytic
