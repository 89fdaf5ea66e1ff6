#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "wcm/series/exp_poly.hpp"
#include "wcm/series/rational.hpp"

namespace wcm::series {

// Truncated formal power series in g: coefficients c[0..order].
template <class Coef>
class Series {
public:
    Series() : c_(1) {}
    explicit Series(int order) : c_(static_cast<std::size_t>(check(order)) + 1) {}
    Series(int order, const Coef& constant) : Series(order) { c_[0] = constant; }

    static Series monomial(int order, int power, const Coef& c) {
        Series s(order);
        if (power <= order) s.c_[static_cast<std::size_t>(power)] = c;
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Coef& operator[](int i) const { return c_.at(static_cast<std::size_t>(i)); }
    Coef& operator[](int i) { return c_.at(static_cast<std::size_t>(i)); }
    Coef coeff(int i) const { return i >= 0 && i <= order() ? c_[static_cast<std::size_t>(i)] : Coef(); }
    const std::vector<Coef>& coefficients() const { return c_; }

    Series truncated(int order) const {
        Series s(order);
        for (int i = 0; i <= std::min(order, this->order()); ++i) s.c_[i] = c_[i];
        return s;
    }

    // Lowest power with a nonzero coefficient, or order()+1 if the series vanishes.
    int valuation() const {
        for (int i = 0; i <= order(); ++i)
            if (!is_zero_coef(c_[i])) return i;
        return order() + 1;
    }

    Series& operator+=(const Series& o) {
        resize_to(std::min(order(), o.order()));
        for (int i = 0; i <= order(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Series& operator-=(const Series& o) {
        resize_to(std::min(order(), o.order()));
        for (int i = 0; i <= order(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Series& operator*=(const Rational& s) {
        for (auto& x : c_) x *= s;
        return *this;
    }
    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }
    friend Series operator-(Series a) { return a *= Rational(-1); }
    friend Series operator*(Series a, const Rational& s) { return a *= s; }
    friend Series operator*(const Rational& s, Series a) { return a *= s; }

    friend Series operator*(const Series& a, const Series& b) {
        int n = std::min(a.order(), b.order());
        Series r(n);
        int va = a.valuation(), vb = b.valuation();
        for (int i = va; i <= n; ++i) {
            if (is_zero_coef(a.c_[i])) continue;
            for (int j = vb; i + j <= n; ++j) {
                if (is_zero_coef(b.c_[j])) continue;
                r.c_[i + j] += mul(a.c_[i], b.c_[j]);
            }
        }
        return r;
    }
    Series& operator*=(const Series& o) { return *this = *this * o; }

    friend bool operator==(const Series& a, const Series& b) {
        int n = std::min(a.order(), b.order());
        for (int i = 0; i <= n; ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }

    // Apply f to every coefficient (used for ExpPoly operators in T).
    template <class Fn>
    Series map(Fn&& fn) const {
        Series r(order());
        for (int i = 0; i <= order(); ++i) r.c_[i] = fn(c_[i]);
        return r;
    }

private:
    static int check(int order) {
        if (order < 0) throw std::domain_error("series truncation order must be >= 0");
        return order;
    }
    static bool is_zero_coef(const Coef& c) {
        if constexpr (std::is_same_v<Coef, Rational>) return c == 0;
        else return c.is_zero();
    }
    static Coef mul(const Coef& a, const Coef& b) { return a * b; }
    void resize_to(int order) { c_.resize(static_cast<std::size_t>(order) + 1); }

    std::vector<Coef> c_;
};

using RationalSeries = Series<Rational>;
using PowerSeriesG = Series<ExpPoly>;

inline RationalSeries constant_series(int order, const Rational& c) { return RationalSeries(order, c); }

inline RationalSeries g_series(int order) { return RationalSeries::monomial(order, 1, Rational(1)); }

// Multiplicative inverse by Newton iteration y <- y(2 - f y).
inline RationalSeries inverse(const RationalSeries& f) {
    if (f[0] == 0) throw std::domain_error("series inverse needs a nonzero constant term");
    int n = f.order();
    RationalSeries y(0, Rational(1) / f[0]);
    int p = 0;
    while (p < n) {
        p = std::min(n, 2 * p + 1);
        RationalSeries yp = y.truncated(p);
        RationalSeries two(p, Rational(2));
        y = yp * (two - f.truncated(p) * yp);
    }
    return y.truncated(n);
}

// Square root with positive constant term sqrt(f[0]); f[0] must be a rational square.
inline RationalSeries sqrt_series(const RationalSeries& f) {
    if (f[0] <= 0) throw std::domain_error("series sqrt needs a positive constant term");
    Integer num = f[0].get_num(), den = f[0].get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        throw std::domain_error("series sqrt needs a rational square constant term");
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    int n = f.order();
    RationalSeries y(0, ratio(rn, rd));
    int p = 0;
    while (p < n) {
        p = std::min(n, 2 * p + 1);
        RationalSeries yp = y.truncated(p);
        y = (yp + f.truncated(p) * inverse(yp)) * Rational(1, 2);
    }
    return y.truncated(n);
}

// f(h(g)) for h with zero constant term, by Horner.
template <class Coef>
Series<Coef> compose(const Series<Coef>& f, const RationalSeries& h) {
    if (h[0] != 0) throw std::domain_error("composition needs an inner series without constant term");
    int n = std::min(f.order(), h.order());
    Series<Coef> r(n);
    for (int i = f.order(); i >= 0; --i) {
        Series<Coef> hr(n);
        for (int a = 0; a <= n; ++a) {
            if (r[a] == Coef()) continue;
            for (int b = 1; a + b <= n; ++b)
                if (h[b] != 0) hr[a + b] += r[a] * h[b];
        }
        hr[0] += f[i];
        r = hr;
    }
    return r;
}

// Root of alpha^3 - alpha/4 + g = 0 with alpha(0) = 1/2, by Newton iteration on series.
inline RationalSeries alpha_series(int order) {
    RationalSeries a(0, Rational(1, 2));
    int p = 0;
    while (p < order) {
        p = std::min(order, 2 * p + 1);
        RationalSeries ap = a.truncated(p);
        RationalSeries g = g_series(p);
        RationalSeries f = ap * ap * ap - ap * Rational(1, 4) + g;
        RationalSeries df = ap * ap * Rational(3) - RationalSeries(p, Rational(1, 4));
        a = ap - f * inverse(df);
    }
    return a.truncated(order);
}

// Sigma = sqrt(3 alpha^2/2 - 1/8).
inline RationalSeries sigma_series(int order) {
    RationalSeries a = alpha_series(order);
    return sqrt_series(a * a * Rational(3, 2) - RationalSeries(order, Rational(1, 8)));
}

// beta = (alpha - Sigma)/(alpha + Sigma).
inline RationalSeries beta_series(int order) {
    RationalSeries a = alpha_series(order), s = sigma_series(order);
    return (a - s) * inverse(a + s);
}

inline PowerSeriesG lift(const RationalSeries& s) {
    PowerSeriesG r(s.order());
    for (int i = 0; i <= s.order(); ++i) r[i] = ExpPoly(s[i]);
    return r;
}

}  // namespace wcm::series
