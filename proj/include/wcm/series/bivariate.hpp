#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "wcm/series/rational.hpp"

namespace wcm::series {

// Truncated series in (z, x): coefficients of z^i x^j for i <= zo, j <= xo.
class BivariateSeries {
public:
    BivariateSeries(int z_order, int x_order)
        : zo_(z_order), xo_(x_order), c_(static_cast<std::size_t>((z_order + 1) * (x_order + 1))) {
        if (z_order < 0 || x_order < 0) throw std::domain_error("bivariate truncation orders must be >= 0");
    }
    static BivariateSeries constant(int zo, int xo, const Rational& v) {
        BivariateSeries s(zo, xo);
        s.at(0, 0) = v;
        return s;
    }
    static BivariateSeries z(int zo, int xo) {
        BivariateSeries s(zo, xo);
        if (zo >= 1) s.at(1, 0) = 1;
        return s;
    }
    static BivariateSeries x(int zo, int xo) {
        BivariateSeries s(zo, xo);
        if (xo >= 1) s.at(0, 1) = 1;
        return s;
    }

    int z_order() const { return zo_; }
    int x_order() const { return xo_; }
    Rational& at(int i, int j) { return c_[idx(i, j)]; }
    const Rational& at(int i, int j) const { return c_[idx(i, j)]; }
    Rational coeff(int i, int j) const {
        return i >= 0 && j >= 0 && i <= zo_ && j <= xo_ ? c_[idx(i, j)] : Rational(0);
    }

    BivariateSeries& operator+=(const BivariateSeries& o) {
        check(o);
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
        return *this;
    }
    BivariateSeries& operator-=(const BivariateSeries& o) {
        check(o);
        for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
        return *this;
    }
    BivariateSeries& operator*=(const Rational& s) {
        for (auto& v : c_) v *= s;
        return *this;
    }
    friend BivariateSeries operator+(BivariateSeries a, const BivariateSeries& b) { return a += b; }
    friend BivariateSeries operator-(BivariateSeries a, const BivariateSeries& b) { return a -= b; }
    friend BivariateSeries operator*(BivariateSeries a, const Rational& s) { return a *= s; }
    friend BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
        a.check(b);
        BivariateSeries r(a.zo_, a.xo_);
        for (int i1 = 0; i1 <= a.zo_; ++i1)
            for (int j1 = 0; j1 <= a.xo_; ++j1) {
                const Rational& u = a.at(i1, j1);
                if (u == 0) continue;
                for (int i2 = 0; i1 + i2 <= a.zo_; ++i2)
                    for (int j2 = 0; j1 + j2 <= a.xo_; ++j2) {
                        const Rational& v = b.at(i2, j2);
                        if (v != 0) r.at(i1 + i2, j1 + j2) += u * v;
                    }
            }
        return r;
    }
    friend bool operator==(const BivariateSeries& a, const BivariateSeries& b) {
        return a.zo_ == b.zo_ && a.xo_ == b.xo_ && a.c_ == b.c_;
    }

    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }

private:
    std::size_t idx(int i, int j) const {
        if (i < 0 || j < 0 || i > zo_ || j > xo_) throw std::out_of_range("bivariate coefficient index");
        return static_cast<std::size_t>(i * (xo_ + 1) + j);
    }
    void check(const BivariateSeries& o) const {
        if (zo_ != o.zo_ || xo_ != o.xo_) throw std::domain_error("bivariate series with mismatched truncation");
    }

    int zo_, xo_;
    std::vector<Rational> c_;
};

inline BivariateSeries pow(const BivariateSeries& b, int e) {
    BivariateSeries r = BivariateSeries::constant(b.z_order(), b.x_order(), Rational(1));
    for (int i = 0; i < e; ++i) r = r * b;
    return r;
}

// 1/f for f with nonzero constant term: f0^{-1} sum_k (-(f - f0)/f0)^k; the tail is nilpotent.
inline BivariateSeries inverse(const BivariateSeries& f) {
    Rational f0 = f.at(0, 0);
    if (f0 == 0) throw std::domain_error("bivariate inverse needs a nonzero constant term");
    int zo = f.z_order(), xo = f.x_order();
    BivariateSeries h = f * (Rational(-1) / f0);
    h.at(0, 0) += 1;  // h = 1 - f/f0, no constant term
    BivariateSeries r = BivariateSeries::constant(zo, xo, Rational(1));
    BivariateSeries p = r;
    for (int k = 1; k <= zo + xo; ++k) {
        p = p * h;
        if (p.is_zero()) break;
        r += p;
    }
    return r * (Rational(1) / f0);
}

// log(1 - y) for y without constant term.
inline BivariateSeries log1m(const BivariateSeries& y) {
    if (y.at(0, 0) != 0) throw std::domain_error("log1m needs a series without constant term");
    BivariateSeries r(y.z_order(), y.x_order());
    BivariateSeries p = y;
    for (int k = 1; k <= y.z_order() + y.x_order(); ++k) {
        if (p.is_zero()) break;
        r -= p * Rational(1, k);
        p = p * y;
    }
    return r;
}

struct SigmaA {
    BivariateSeries sigma;
    BivariateSeries a;
};

namespace detail {

inline BivariateSeries x_rhs(const BivariateSeries& s, const BivariateSeries& a) {
    int zo = s.z_order(), xo = s.x_order();
    auto one = BivariateSeries::constant(zo, xo, Rational(1));
    auto as = a * s;
    auto s3 = s * s * s;
    auto as3 = a * s3;
    auto num = s * pow(one - as, 3) * (one - as3);
    auto den = one + s + as - as * s * Rational(6) + as3 + a * as3 + a * as3 * s;
    return num * inverse(den * den);
}

inline BivariateSeries z_rhs(const BivariateSeries& s, const BivariateSeries& a) {
    int zo = s.z_order(), xo = s.x_order();
    auto one = BivariateSeries::constant(zo, xo, Rational(1));
    auto s3 = s * s * s;
    auto num = a * pow(one - s, 3) * (one - a * a * s3);
    auto den = pow(one - a * s, 3) * (one - a * s3);
    return num * inverse(den);
}

}  // namespace detail

// Analytic solution (sigma, a) of the two parametrizing equations with sigma = x + O(x^2), a = z + O(x).
inline SigmaA solve_sigma_a(int z_order, int x_order, int max_iterations = 0) {
    if (z_order < 1 || x_order < 1) throw std::domain_error("solve_sigma_a needs orders >= 1");
    if (max_iterations <= 0) max_iterations = 2 * (z_order + x_order) + 4;
    int zo = z_order, xo = x_order;
    auto one = BivariateSeries::constant(zo, xo, Rational(1));
    auto X = BivariateSeries::x(zo, xo);
    auto Z = BivariateSeries::z(zo, xo);
    BivariateSeries s = X, a = Z;
    for (int it = 0; it < max_iterations; ++it) {
        // sigma = x * D^2 / ((1 - a s)^3 (1 - a s^3)); a = z (1 - a s)^3 (1 - a s^3) / ((1 - s)^3 (1 - a^2 s^3))
        auto as = a * s;
        auto s3 = s * s * s;
        auto as3 = a * s3;
        auto den = one + s + as - as * s * Rational(6) + as3 + a * as3 + a * as3 * s;
        auto q = pow(one - as, 3) * (one - as3);
        auto s_new = X * den * den * inverse(q);
        auto a_new = Z * q * inverse(pow(one - s, 3) * (one - a * a * s3));
        bool done = s_new == s && a_new == a;
        s = std::move(s_new);
        a = std::move(a_new);
        if (done) return {s, a};
    }
    throw std::runtime_error("solve_sigma_a did not converge within the iteration budget");
}

// [z^F x^E] expansion of the discrete two-point function at graph distance t >= 1.
inline BivariateSeries discrete_two_point_series(const SigmaA& sa, int t) {
    if (t < 1) throw std::domain_error("graph distance must be >= 1");
    const auto& s = sa.sigma;
    const auto& a = sa.a;
    auto L = [&](int k) { return log1m(a * pow(s, k)); };
    return L(t + 1) * Rational(3) + L(t + 3) - L(t) - L(t + 2) * Rational(3);
}

}  // namespace wcm::series
