#pragma once

#include <cmath>
#include <map>
#include <ostream>
#include <type_traits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wcm/series/rational.hpp"

namespace wcm::series {

template <class Real>
Real convert(const Rational& q) {
    if constexpr (std::is_same_v<Real, double>) {
        return q.get_d();
    } else if constexpr (std::is_same_v<Real, long double>) {
        return static_cast<long double>(q.get_num().get_d()) / static_cast<long double>(q.get_den().get_d());
    } else {
        return Real(q.get_num().get_str()) / Real(q.get_den().get_str());
    }
}

// Finite sum of c * T^k * exp(-m T) with exact rational c.
class ExpPoly {
public:
    struct Key {
        int k = 0;
        int m = 0;
        friend bool operator<(const Key& a, const Key& b) {
            return a.m != b.m ? a.m < b.m : a.k < b.k;
        }
        friend bool operator==(const Key& a, const Key& b) { return a.k == b.k && a.m == b.m; }
    };
    using Terms = std::map<Key, Rational>;

    ExpPoly() = default;
    explicit ExpPoly(const Rational& c) { add_term(0, 0, c); }
    static ExpPoly term(int k, int m, const Rational& c) {
        ExpPoly p;
        p.add_term(k, m, c);
        return p;
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coeff(int k, int m) const {
        auto it = terms_.find(Key{k, m});
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(int k, int m, const Rational& c) {
        if (k < 0 || m < 0) throw std::domain_error("ExpPoly term with negative power or rate");
        if (c == 0) return;
        auto [it, fresh] = terms_.try_emplace(Key{k, m}, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    ExpPoly& operator+=(const ExpPoly& o) {
        for (const auto& [key, c] : o.terms_) add_term(key.k, key.m, c);
        return *this;
    }
    ExpPoly& operator-=(const ExpPoly& o) {
        for (const auto& [key, c] : o.terms_) add_term(key.k, key.m, -c);
        return *this;
    }
    ExpPoly& operator*=(const Rational& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [key, c] : terms_) c *= s;
        return *this;
    }
    friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
    friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
    friend ExpPoly operator-(ExpPoly a) { return a *= Rational(-1); }
    friend ExpPoly operator*(ExpPoly a, const Rational& s) { return a *= s; }
    friend ExpPoly operator*(const Rational& s, ExpPoly a) { return a *= s; }
    friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
        ExpPoly r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) r.add_term(ka.k + kb.k, ka.m + kb.m, ca * cb);
        return r;
    }
    ExpPoly& operator*=(const ExpPoly& o) { return *this = *this * o; }
    friend bool operator==(const ExpPoly& a, const ExpPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const ExpPoly& a, const ExpPoly& b) { return !(a == b); }

    // Constant term, or the coefficient of T^0 e^{0}; used when a series has scalar coefficients.
    Rational constant() const { return coeff(0, 0); }

    template <class Real>
    Real eval(const Real& T) const {
        using std::exp;
        using std::pow;
        Real s = 0;
        for (const auto& [key, c] : terms_) {
            Real t = convert<Real>(c);
            if (key.k > 0) t *= pow(T, key.k);
            if (key.m > 0) t *= exp(-Real(key.m) * T);
            s += t;
        }
        return s;
    }
    double operator()(double T) const { return eval<double>(T); }

    // Value at T = 0.
    Rational at_zero() const {
        Rational s = 0;
        for (const auto& [key, c] : terms_)
            if (key.k == 0) s += c;
        return s;
    }

private:
    Terms terms_;
};

inline ExpPoly expoly_diff(const ExpPoly& f) {
    ExpPoly r;
    for (const auto& [key, c] : f.terms()) {
        if (key.k > 0) r.add_term(key.k - 1, key.m, c * key.k);
        if (key.m > 0) r.add_term(key.k, key.m, -c * key.m);
    }
    return r;
}

// Integral over [0, inf): sum c k!/m^{k+1}.
inline Rational expoly_integrate(const ExpPoly& f) {
    Rational s = 0;
    for (const auto& [key, c] : f.terms()) {
        if (key.m == 0) throw std::domain_error("ExpPoly term with rate 0 is not integrable on [0,inf)");
        Integer mp;
        mpz_ui_pow_ui(mp.get_mpz_t(), static_cast<unsigned long>(key.m), static_cast<unsigned long>(key.k + 1));
        s += c * ratio(factorial(key.k), mp);
    }
    return s;
}

// Laplace transform at rational w >= 0: sum c k!/(w+m)^{k+1}.
inline Rational expoly_laplace(const ExpPoly& f, const Rational& w) {
    Rational s = 0;
    for (const auto& [key, c] : f.terms()) {
        Rational base = w + key.m;
        if (base == 0) throw std::domain_error("Laplace transform diverges");
        Rational p = 1;
        for (int i = 0; i <= key.k; ++i) p *= base;
        s += c * Rational(factorial(key.k)) / p;
    }
    return s;
}

// Integral over [0, T] evaluated in floating point.
template <class Real>
Real expoly_integrate_upto(const ExpPoly& f, const Real& T) {
    using std::exp;
    using std::pow;
    Real s = 0;
    for (const auto& [key, c] : f.terms()) {
        Real cc = convert<Real>(c);
        if (key.m == 0) {
            s += cc * pow(T, key.k + 1) / Real(key.k + 1);
            continue;
        }
        // k!/m^{k+1} (1 - e^{-mT} sum_{i<=k} (mT)^i/i!)
        Real m = Real(key.m);
        Real x = m * T;
        Real partial = 0, term = 1;
        for (int i = 0; i <= key.k; ++i) {
            if (i > 0) term *= x / Real(i);
            partial += term;
        }
        Real kf = 1;
        for (int i = 2; i <= key.k; ++i) kf *= Real(i);
        s += cc * kf / pow(m, key.k + 1) * (Real(1) - exp(-x) * partial);
    }
    return s;
}

// Apply a polynomial in d/dT: sum_j coeffs[j] * f^{(j)}.
inline ExpPoly apply_operator(const ExpPoly& f, const std::vector<Rational>& coeffs) {
    ExpPoly r, d = f;
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
        if (j > 0) d = expoly_diff(d);
        if (coeffs[j] != 0) r += d * coeffs[j];
    }
    return r;
}

inline std::ostream& operator<<(std::ostream& os, const ExpPoly& f) {
    if (f.is_zero()) return os << "0";
    bool first = true;
    for (const auto& [key, c] : f.terms()) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        if (key.k > 0) os << "*T^" << key.k;
        if (key.m > 0) os << "*exp(-" << key.m << "T)";
    }
    return os;
}

}  // namespace wcm::series
