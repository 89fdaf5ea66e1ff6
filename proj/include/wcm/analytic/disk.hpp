#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "wcm/analytic/jet.hpp"
#include "wcm/analytic/params.hpp"

namespace wcm::analytic {

inline constexpr int kMaxJetOrder = 40;

// W_g(z) = (z - z^2 + (z - alpha - 1/2) sqrt((z + alpha - 1/2)^2 - 2g/alpha)) / 2
// For z >= 2 the rationalized form (1-4a^2)(a z - (2a+1)(6a+1)/16) / (2(A R + z(z-1))) is used,
// where A = z - a - 1/2 and R is the square root.
template <class J>
J disk_function_jet(const GrandCanonicalParams& p, const J& z) {
    const double a = p.alpha;
    J disc = (z + (a - 0.5)) * (z + (a - 0.5)) - 2 * p.g / a;
    J AR = (z - (a + 0.5)) * sqrt(disc);
    if (z.constant() < 2) return 0.5 * (z - z * z + AR);
    J num = (1 - 4 * a * a) * (a * z - (2 * a + 1) * (6 * a + 1) / 16);
    return 0.5 * num / (AR + z * (z - 1.0));
}

inline double disk_function(const GrandCanonicalParams& p, double z) {
    if (z < p.alpha + 0.5) throw std::domain_error("disk_function: z below alpha + 1/2");
    const double a = p.alpha;
    double r = z + a - 0.5;
    double AR = (z - a - 0.5) * std::sqrt(std::max(0.0, r * r - 2 * p.g / a));
    if (z < 2) return 0.5 * (z - z * z + AR);
    return 0.5 * (1 - 4 * a * a) * (a * z - (2 * a + 1) * (6 * a + 1) / 16) / (AR + z * (z - 1));
}

namespace detail {

// expm1(-2 Sigma t)/Sigma, finite at Sigma = 0.
template <class J>
J expm1_scaled(const GrandCanonicalParams& p, const J& t) {
    if (p.sigma == 0) return -2.0 * t;
    return expm1(-2 * p.sigma * t) / p.sigma;
}

// 1/(zhat - alpha - 1/2) = (alpha + Sigma) A B e^{2 Sigma t} / 4, vanishing at t = 0.
template <class J>
J inverse_zhat_excess(const GrandCanonicalParams& p, const J& t) {
    J m = expm1_scaled(p, t);
    J A = -1.0 * m;
    J B = 2 / (p.alpha + p.sigma) - p.beta * m;
    return (p.alpha + p.sigma) / 4 * A * B * exp(2 * p.sigma * t);
}

}  // namespace detail

template <class J>
J zhat_jet(const GrandCanonicalParams& p, const J& t) {
    return (p.alpha + 0.5) + reciprocal(detail::inverse_zhat_excess(p, t));
}

// zhat(T) = alpha + 1/2 + Sigma^2/(sinh(Sigma T) C_g(T)); zhat(0) = +inf.
inline double zhat(const GrandCanonicalParams& p, double T) {
    if (T < 0) throw std::domain_error("zhat: T must be >= 0");
    if (std::isinf(T)) return p.alpha + 0.5;
    double inv = detail::inverse_zhat_excess(p, Taylor(0, T)).constant();
    if (inv == 0) return std::numeric_limits<double>::infinity();
    if (std::isinf(inv)) return p.alpha + 0.5;
    return p.alpha + 0.5 + 1 / inv;
}

// W^{(d)}: coefficients of W_g(z) = sum_d W^{(d)} z^{-d-1}, d = 0..n-1.
inline std::vector<double> disk_coefficients(const GrandCanonicalParams& p, int n) {
    if (n < 0) throw std::domain_error("disk_coefficients: n must be >= 0");
    Taylor w = Taylor::variable(n + 2, 0.0);
    Taylor lin = 1.0 + (p.alpha - 0.5) * w;
    Taylor P = w - 1.0 + (1.0 - (p.alpha + 0.5) * w) * sqrt(lin * lin - (2 * p.g / p.alpha) * w * w);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int d = 0; d < n; ++d) out[static_cast<std::size_t>(d)] = 0.5 * P[d + 3];
    return out;
}

// Coefficient of z1^{-d1-1} z2^{-d2-1} in the two-point generating function.
inline double general_two_point_coeff(const GrandCanonicalParams& p, int d1, int d2, double T) {
    if (d1 < 1 || d2 < 1) throw std::domain_error("general_two_point_coeff: degrees must be >= 1");
    if (!(T > 0)) throw std::domain_error("general_two_point_coeff: T must be > 0");
    if (d1 > kMaxJetOrder || d2 + 3 > kMaxJetOrder)
        throw std::domain_error("general_two_point_coeff: extraction order exceeds jet depth");
    const int K = d1;

    // tau(eps) with 1/zhat(tau) = eps
    Taylor s = Taylor::variable(K, 0.0);
    Taylor r = detail::inverse_zhat_excess(p, s);
    Taylor q = r / (1.0 + (p.alpha + 0.5) * r);
    std::vector<double> qc(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) qc[static_cast<std::size_t>(k)] = q[k];
    Taylor eps = Taylor::variable(K, 0.0);
    Taylor tau = eps;
    for (int it = 0; it <= K; ++it) tau += eps - compose_taylor(tau, qc);

    // h(y) = sum_{j<=d2-2} y^j W^{(d2-2-j)} - y^{d2-1} W(y) = -sum_{n>=0} W^{(d2-1+n)} y^{-1-n}
    Taylor y = zhat_jet(p, Taylor::variable(K, T));
    Taylor h(K, 0.0);
    if (y[0] >= 2.5) {
        const int terms = 64;
        std::vector<double> W = disk_coefficients(p, d2 - 1 + terms);
        Taylor r = reciprocal(y);
        for (int n = terms - 1; n >= 0; --n) {
            h = h * r;
            h -= W[static_cast<std::size_t>(d2 - 1 + n)];
        }
        h = h * r;
    } else {
        std::vector<double> W = disk_coefficients(p, d2 + 1);
        Taylor ypow(K, 1.0);
        for (int j = 0; j <= d2 - 2; ++j) {
            h += ypow * W[static_cast<std::size_t>(d2 - 2 - j)];
            ypow *= y;
        }
        h -= ypow * disk_function_jet(p, y);
    }

    std::vector<double> hc(static_cast<std::size_t>(K) + 1);
    for (int k = 0; k <= K; ++k) hc[static_cast<std::size_t>(k)] = h[k];
    return -compose_taylor(tau, hc)[d1];
}

}  // namespace wcm::analytic
