#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wcm/analytic/disk.hpp"
#include "wcm/analytic/quadrature.hpp"
#include "wcm/analytic/upoly.hpp"

namespace wcm::analytic {

namespace detail {

inline std::vector<double> degree_operator(int d) {
    switch (d) {
        case 1: return {1.0};
        case 2: return {0.5, 0.5};
        case 3: return {1.0 / 3, 0.5, 1.0 / 6};
        default: throw std::domain_error("degree operator only for d <= 3");
    }
}

inline std::vector<double> op_mul(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

inline void check_degrees(int d1, int d2) {
    if (d1 < 1 || d2 < 1) throw std::domain_error("two-point degrees must be >= 1");
}

}  // namespace detail

// Element of the u-algebra equal to G^{(d1,d2)} for d1, d2 <= 3.
inline UPolynomial two_point_poly(int d1, int d2, double sigma) {
    UPolynomial g1 = second_log_derivative(sigma).D();
    return g1.apply(detail::op_mul(detail::degree_operator(d1), detail::degree_operator(d2)));
}

// Same operator applied to d^2 log C instead, a primitive of G^{(d1,d2)}.
inline UPolynomial two_point_primitive(int d1, int d2, double sigma) {
    return second_log_derivative(sigma).apply(detail::op_mul(detail::degree_operator(d1), detail::degree_operator(d2)));
}

inline double two_point(int d1, int d2, const GrandCanonicalParams& p, double T) {
    detail::check_degrees(d1, d2);
    if (!(T > 0)) throw std::domain_error("two_point: T must be > 0");
    if (d1 > 3 || d2 > 3) return general_two_point_coeff(p, d1, d2, T);
    return two_point_poly(d1, d2, p.sigma).at(p, T);
}

inline double two_point_at_zero(int d1, int d2, const GrandCanonicalParams& p) {
    detail::check_degrees(d1, d2);
    if (d1 > 3 || d2 > 3) throw std::domain_error("two_point_at_zero: only degrees <= 3");
    return two_point_poly(d1, d2, p.sigma).at_zero(p);
}

// Marked local maxima: (1 - D) G^{(2)} / 3.
inline double two_point_max(const GrandCanonicalParams& p, double T) {
    if (!(T > 0)) throw std::domain_error("two_point_max: T must be > 0");
    return two_point_poly(2, 2, p.sigma).apply({1.0 / 3, -1.0 / 3}).at(p, T);
}

inline double two_point_integral(int d1, int d2, const GrandCanonicalParams& p) {
    detail::check_degrees(d1, d2);
    const double a = p.alpha, g = p.g;
    if (d1 == 1 && d2 == 1) return g / (2 * a);
    if (d1 == 2 && d2 == 2) return g * (1 - 2 * a) * (5 - 6 * a) / (32 * a);
    if (d1 <= 3 && d2 <= 3) {
        UPolynomial prim = two_point_primitive(d1, d2, p.sigma);
        return prim.at_infinity() - prim.at_zero(p);
    }
    double scale = p.sigma > 0 ? 1 / p.sigma : 10.0;
    return integrate_half_line([&](double T) { return T > 0 ? two_point(d1, d2, p, T) : 0.0; },
                               std::min(scale, 20.0), 1e-11);
}

// B_x(a, -1) = int_0^x t^{a-1} (1-t)^{-2} dt.
inline double incomplete_beta(double x, double a) {
    if (!(x >= 0) || x >= 1) throw std::domain_error("incomplete_beta: argument must be in [0,1)");
    if (!(a > 0)) throw std::domain_error("incomplete_beta: a must be > 0");
    if (x == 0) return 0.0;
    if (x <= 0.95) {
        // x^a/a * sum_j (2)_j (a)_j / ((a+1)_j j!) x^j
        double term = 1, sum = 1;
        for (int j = 0; j < 100000; ++j) {
            term *= x * (j + 2) * (a + j) / ((a + j + 1) * (j + 1));
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        return std::pow(x, a) / a * sum;
    }
    return integrate_endpoint_singular(
        [a](double t) { return std::pow(t, a - 1) / ((1 - t) * (1 - t)); }, 0.0, x, 1e-14);
}

namespace detail {

// beta^{-w/(2 Sigma)} B_beta(1 + w/(2 Sigma), -1), evaluated without forming either factor.
inline double scaled_beta_kernel(const GrandCanonicalParams& p, double w) {
    const double b = p.beta;
    if (w == 0) return b / (1 - b);
    if (p.sigma == 0) throw std::domain_error("Laplace closed form needs Sigma > 0");
    const double a = 1 + w / (2 * p.sigma);
    if (b <= 0.95) {
        double term = b / a, sum = term;
        for (int j = 1; j < 1000000; ++j) {
            term *= b * (j + 1) / j * (a + j - 1) / (a + j);
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        return sum;
    }
    // beta * int_0^1 s^{a-1} (1 - beta s)^{-2} ds
    return b * integrate_endpoint_singular(
                   [a, b](double s) { return std::pow(s, a - 1) / ((1 - b * s) * (1 - b * s)); }, 0.0, 1.0, 1e-14);
}

}  // namespace detail

inline double laplace_two_point(int d1, int d2, const GrandCanonicalParams& p, double w) {
    detail::check_degrees(d1, d2);
    if (!(w >= 0)) throw std::domain_error("laplace_two_point: w must be >= 0");
    const double a = p.alpha, s = p.sigma;
    if (s > 0 && d1 == 1 && d2 == 1)
        return a * a - s * s - 2 * w * s * detail::scaled_beta_kernel(p, w);
    if (s > 0 && d1 == 2 && d2 == 2) {
        double q = w - a + 1;
        return (1 - 4 * s * s) / 48 * (q * q + 2 * a * a - 2 * a + 0.25) -
               w * (1 + w) * (1 + w) / 2 * s * detail::scaled_beta_kernel(p, w);
    }
    double scale = s > 0 ? 1 / s : 10.0;
    return integrate_half_line(
        [&](double T) { return T > 0 ? std::exp(-w * T) * two_point(d1, d2, p, T) : 0.0; },
        std::min(scale, 20.0), 1e-11);
}

}  // namespace wcm::analytic
