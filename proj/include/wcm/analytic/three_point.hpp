#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "wcm/analytic/jet.hpp"
#include "wcm/analytic/params.hpp"
#include "wcm/analytic/two_point.hpp"

namespace wcm::analytic {

struct ThreePointFrame {
    double S = 0, T = 0, U = 0;
    double d12() const { return S + T; }
    double d23() const { return T + U; }
    double d31() const { return U + S; }
};

enum class ThreePointKind { degree1, degree2 };
enum class FPart { full, even, odd, confluent };

// Coefficients of delta(S), delta(T), delta(U) in the degree-2 three-point function.
struct ThreePointDeltaTerms {
    double at_S_zero = 0, at_T_zero = 0, at_U_zero = 0;
};

namespace detail {

template <class J>
J cfactor(const GrandCanonicalParams& p, const J& x, double b) {
    return (1 - b) - b * expm1(-2 * p.sigma * x);
}

}  // namespace detail

// F_even, F_odd or combinations as jets in (S, T, U), each variable to order N.
// C_g and hat C_g are factored as e^{Sigma x} (1 - b e^{-2 Sigma x}) so that all exponentials cancel.
template <int N = 3>
Jet<3, N> f_jet(const GrandCanonicalParams& p, const ThreePointFrame& f, FPart part = FPart::full) {
    if (!(p.sigma > 0)) throw std::domain_error("three-point functions need Sigma > 0");
    if (f.S < 0 || f.T < 0 || f.U < 0) throw std::domain_error("three-point frame needs S, T, U >= 0");
    using J = Jet<3, N>;
    const J s = J::variable(0, f.S), t = J::variable(1, f.T), u = J::variable(2, f.U);
    const double a = p.alpha, sg = p.sigma, b = p.beta;
    auto sq = [](const J& x) { return x * x; };
    auto c = [&](const J& x) { return detail::cfactor(p, x, b); };
    J den = sq(c(s + t) * c(t + u) * c(u + s));
    J inv_den = reciprocal(den);
    J even, odd;
    if (part != FPart::odd) {
        even = ((a + sg) * (a + sg) / (4 * sg * sg)) * sq(c(s) * c(t) * c(u) * c(s + t + u)) * inv_den;
        if (part == FPart::even) return even;
    }
    auto one_minus_e = [&](const J& x) { return -1.0 * expm1(-2 * sg * x); };
    J odd_num = sq(one_minus_e(s) * one_minus_e(t) * one_minus_e(u) * detail::cfactor(p, s + t + u, b * b));
    odd = ((a - sg) * (a - sg) / (4 * sg * sg)) * odd_num * inv_den;
    if (part == FPart::odd) return odd;
    if (part == FPart::confluent) return even - odd;
    return even + odd;
}

inline double f_even(const GrandCanonicalParams& p, const ThreePointFrame& f) {
    return f_jet<0>(p, f, FPart::even).constant();
}
inline double f_odd(const GrandCanonicalParams& p, const ThreePointFrame& f) {
    return f_jet<0>(p, f, FPart::odd).constant();
}

namespace detail {

inline void check_interior(const ThreePointFrame& f) {
    if (!(f.S > 0 && f.T > 0 && f.U > 0))
        throw std::domain_error("three-point smooth part needs S, T, U > 0");
}

template <int N>
double degree1_from(const Jet<3, N>& F) { return F.derivative({1, 1, 1}); }

template <int N>
double degree2_from(const Jet<3, N>& F) {
    double sum = 0;
    for (int a = 1; a <= 2; ++a)
        for (int b = 1; b <= 2; ++b)
            for (int c = 1; c <= 2; ++c) sum += F.derivative({a, b, c});
    return sum / 8;
}

}  // namespace detail

// d_S d_T d_U F or (1/8)(1+d_S)(1+d_T)(1+d_U) of it; delta terms excluded.
inline double three_point(ThreePointKind kind, const GrandCanonicalParams& p, const ThreePointFrame& f) {
    detail::check_interior(f);
    if (kind == ThreePointKind::degree1) return detail::degree1_from(f_jet<3>(p, f));
    return detail::degree2_from(f_jet<3>(p, f));
}

inline ThreePointDeltaTerms three_point_delta_terms(const GrandCanonicalParams& p, const ThreePointFrame& f) {
    detail::check_interior(f);
    return {two_point(2, 2, p, f.T + f.U), two_point(2, 2, p, f.U + f.S), two_point(2, 2, p, f.S + f.T)};
}

// Completely confluent part d_S d_T d_U (F_even - F_odd).
inline double three_point_confluent(const GrandCanonicalParams& p, const ThreePointFrame& f) {
    detail::check_interior(f);
    return detail::degree1_from(f_jet<3>(p, f, FPart::confluent));
}

inline double three_point_confluent_degree2(const GrandCanonicalParams& p, const ThreePointFrame& f) {
    detail::check_interior(f);
    return detail::degree2_from(f_jet<3>(p, f, FPart::confluent));
}

}  // namespace wcm::analytic
