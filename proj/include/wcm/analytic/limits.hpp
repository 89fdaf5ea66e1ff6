#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wcm/analytic/params.hpp"

namespace wcm::analytic {

// Leading continuum profile of G^{(1)} in units of eps^{3/2}: 2 cosh T0 / sinh^3 T0.
inline double scaling_two_point(double T0) {
    if (!(T0 > 0)) throw std::domain_error("scaling_two_point: T0 must be > 0");
    double s = std::sinh(T0);
    return 2 * std::cosh(T0) / (s * s * s);
}

// Degree-d analogue (d = 1, 2, 3) with prefactors 2, 1/2, 2/9.
inline double scaling_two_point_degree(int d, double T0) {
    static const double pref[] = {2.0, 0.5, 2.0 / 9};
    if (d < 1 || d > 3) throw std::domain_error("scaling_two_point_degree: d in 1..3");
    return scaling_two_point(T0) * pref[d - 1] / 2;
}

// Leading behaviour of F_even and F_odd in units of eps^{-1}.
inline double scaling_three_point_F(double S0, double T0, double U0) {
    auto sh2 = [](double x) { double s = std::sinh(x); return s * s; };
    return sh2(S0) * sh2(T0) * sh2(U0) * sh2(S0 + T0 + U0) / (12 * sh2(S0 + T0) * sh2(T0 + U0) * sh2(U0 + S0));
}

// T-profile of the local limit: (3 + 23T' + 30T'^2 + 10T'^3 - 3/(1+T')^4) / (630 sqrt(2 pi)).
inline double local_limit_profile(double T) {
    if (!(T > 0)) throw std::domain_error("local_limit: T must be > 0");
    double x = T / (2 * kSqrt3);
    double q = (1 + x) * (1 + x);
    return (3 + 23 * x + 30 * x * x + 10 * x * x * x - 3 / (q * q)) / (630 * std::sqrt(2 * std::numbers::pi));
}

// Large-F asymptotic of [g^F] G^{(1)}(T).
inline double local_limit_two_point(int F, double T) {
    if (F < 1) throw std::domain_error("local_limit: F must be >= 1");
    double logpref = -2.5 * std::log(F) + F * std::log(12 * kSqrt3);
    return std::exp(logpref) * local_limit_profile(T);
}

}  // namespace wcm::analytic
