#pragma once

#include <cmath>
#include <stdexcept>

#include "wcm/analytic/three_point.hpp"
#include "wcm/analytic/two_point.hpp"

namespace wcm::analytic {

namespace detail {

template <class J>
J log_C(const GrandCanonicalParams& p, const J& t) {
    return std::log((p.alpha + p.sigma) / 2) + p.sigma * t + log(cfactor(p, t, p.beta));
}

template <class J>
J log_C_hat(const GrandCanonicalParams& p, const J& t) {
    return std::log((p.alpha + p.sigma) * (p.alpha + p.sigma) / 2) + p.sigma * t + log(cfactor(p, t, p.beta * p.beta));
}

// The closed form of int_0^T dS d_U conf-G^{(1)}(S, T-S, U) at U = 0, as a jet in T.
inline Taylor vert_integral_jet(const GrandCanonicalParams& p, double T, int order = 2) {
    const int M = order + 4;
    Taylor t = Taylor::variable(M, T);
    Taylor lc = log_C(p, t), lch = log_C_hat(p, t);
    Taylor u = lc.d();
    Taylor g1 = u.d().d();
    Taylor l3 = (lch - lc).d().d().d();
    Taylor Q = lch.d().d();
    Taylor E = exp(-2 * p.sigma * t);
    Taylor ratio = (1.0 - E) * (1.0 - p.beta * p.beta * E) / (cfactor(p, t, p.beta) * cfactor(p, t, p.beta));
    Taylor I = 4 * p.alpha * t * g1 + 8.0 * (lc - std::log(p.sigma)) * l3 - 4.0 * ratio * (Q.d() - 2.0 * u * Q);
    return I.truncated(order);
}

}  // namespace detail

// Two marked bivalent vertices at distance T with a marked cubic vertex on the geodesic.
inline double two_point_vert(const GrandCanonicalParams& p, double T) {
    if (!(T > 0)) throw std::domain_error("two_point_vert: T must be > 0");
    if (!(p.sigma > 0)) throw std::domain_error("two_point_vert: needs Sigma > 0");
    Taylor I = detail::vert_integral_jet(p, T, 2);
    Taylor lc = detail::log_C(p, Taylor::variable(5, T));
    Taylor g1 = lc.d().d().d();
    double dg1 = g1.derivative(1), ddg1 = g1.derivative(2);
    return T * two_point(2, 2, p, T) - 0.5 * (dg1 + ddg1) + (I[0] + 2 * I.derivative(1) + I.derivative(2)) / 8;
}

// lim_{U -> 0} of the confluent degree-2 three-point function at (S, T - S, U).
inline double vert_integrand(const GrandCanonicalParams& p, double S, double T) {
    if (!(S > 0 && S < T)) throw std::domain_error("vert_integrand: need 0 < S < T");
    return detail::degree2_from(f_jet<2>(p, {S, T - S, 0.0}, FPart::confluent));
}

}  // namespace wcm::analytic
