#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace wcm::analytic {

inline constexpr double kSqrt3 = 1.7320508075688772935;
inline constexpr double kCriticalG = 1.0 / (12.0 * kSqrt3);
inline constexpr double kCriticalAlpha = 1.0 / (2.0 * kSqrt3);

struct GrandCanonicalParams {
    double g = 0;
    double alpha = 0;
    double sigma = 0;
    double beta = 0;
};

inline double alpha_residual(double g, double a) { return a * a * a - a / 4 + g; }

inline GrandCanonicalParams make_params(double g) {
    if (!(g > 0)) throw std::domain_error("make_params: need g > 0, got " + std::to_string(g));
    if (g > kCriticalG * (1 + 8 * std::numeric_limits<double>::epsilon()))
        throw std::domain_error("make_params: g above the critical value 1/(12 sqrt 3)");
    g = std::min(g, kCriticalG);

    double x = std::min(1.0, 12 * kSqrt3 * g);
    double th = 2.0 / 3.0 * std::asin(x);
    double a = 12 * g / (1 - std::cos(th) + kSqrt3 * std::sin(th));
    if (!(std::abs(alpha_residual(g, a)) <= 1e-12) || a < kCriticalAlpha || a > 0.5) {
        double lo = kCriticalAlpha, hi = 0.5;
        for (int i = 0; i < 200 && hi - lo > 0; ++i) {
            double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            (alpha_residual(g, mid) > 0 ? hi : lo) = mid;
        }
        a = 0.5 * (lo + hi);
    }
    // one guarded Newton polish step
    double d = 3 * a * a - 0.25;
    if (d > 1e-6) {
        double an = a - alpha_residual(g, a) / d;
        if (an >= kCriticalAlpha && an <= 0.5 && std::abs(alpha_residual(g, an)) <= std::abs(alpha_residual(g, a)))
            a = an;
    }
    a = std::max(a, kCriticalAlpha);

    GrandCanonicalParams p;
    p.g = g;
    p.alpha = a;
    double s2 = 1.5 * (a - kCriticalAlpha) * (a + kCriticalAlpha);
    p.sigma = s2 > 0 ? std::sqrt(s2) : 0.0;
    p.beta = (a - p.sigma) / (a + p.sigma);
    return p;
}

// g = g*(1 - 24 eps^2), the parametrization of the scaling regime.
inline double g_from_epsilon(double eps) { return kCriticalG * (1 - 24 * eps * eps); }

// Params at g = g*(1 - 24 eps^2) computed from eps directly. With alpha = a* + delta the cubic
// reduces to delta^2 (3a* + delta) = 24 eps^2 g*, which avoids the loss of digits in g* - g.
inline GrandCanonicalParams make_params_epsilon(double eps) {
    if (!(eps >= 0) || 24 * eps * eps >= 1) throw std::domain_error("make_params_epsilon: need 0 <= eps < 1/sqrt(24)");
    if (eps == 0) return make_params(kCriticalG);
    const double rhs = 24 * eps * eps * kCriticalG;
    double d = 2 * eps / kSqrt3;
    for (int i = 0; i < 60; ++i) {
        double f = d * d * (3 * kCriticalAlpha + d) - rhs;
        double step = f / (d * (6 * kCriticalAlpha + 3 * d));
        d -= step;
        if (std::abs(step) <= 1e-17 * d) break;
    }
    GrandCanonicalParams p;
    p.g = g_from_epsilon(eps);
    p.alpha = kCriticalAlpha + d;
    p.sigma = std::sqrt(1.5 * d * (2 * kCriticalAlpha + d));
    p.beta = (p.alpha - p.sigma) / (p.alpha + p.sigma);
    return p;
}

}  // namespace wcm::analytic
