#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace wcm::analytic {

// Univariate truncated Taylor expansion c[0] + c[1] h + ... + c[n] h^n around a point.
class Taylor {
public:
    explicit Taylor(int order = 0, double constant = 0) : c_(static_cast<std::size_t>(order) + 1, 0.0) {
        if (order < 0) throw std::domain_error("Taylor order must be >= 0");
        c_[0] = constant;
    }
    static Taylor variable(int order, double x0) {
        Taylor t(order, x0);
        if (order >= 1) t.c_[1] = 1;
        return t;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    int max_degree() const { return order(); }
    double operator[](int i) const { return i <= order() ? c_[static_cast<std::size_t>(i)] : 0.0; }
    double& operator[](int i) { return c_.at(static_cast<std::size_t>(i)); }
    double constant() const { return c_[0]; }
    void set_constant(double v) { c_[0] = v; }
    Taylor constant_like(double v) const { return Taylor(order(), v); }

    // k-th derivative at the expansion point.
    double derivative(int k) const {
        double f = 1;
        for (int i = 2; i <= k; ++i) f *= i;
        return (*this)[k] * f;
    }
    // Formal derivative, order drops by one.
    Taylor d() const {
        Taylor r(std::max(0, order() - 1));
        for (int i = 1; i <= order(); ++i) r.c_[i - 1] = i * c_[i];
        return r;
    }
    Taylor truncated(int order) const {
        Taylor r(order);
        for (int i = 0; i <= std::min(order, this->order()); ++i) r.c_[i] = c_[i];
        return r;
    }

    Taylor& operator+=(const Taylor& o) {
        shrink(o.order());
        for (int i = 0; i <= order(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    Taylor& operator-=(const Taylor& o) {
        shrink(o.order());
        for (int i = 0; i <= order(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Taylor& operator+=(double s) { c_[0] += s; return *this; }
    Taylor& operator-=(double s) { c_[0] -= s; return *this; }
    Taylor& operator*=(double s) {
        for (auto& x : c_) x *= s;
        return *this;
    }
    Taylor& operator/=(double s) { return *this *= 1.0 / s; }

    friend Taylor operator*(const Taylor& a, const Taylor& b) {
        int n = std::min(a.order(), b.order());
        Taylor r(n);
        for (int i = 0; i <= n; ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; i + j <= n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }
    Taylor& operator*=(const Taylor& o) { return *this = *this * o; }

private:
    void shrink(int o) {
        if (o < order()) c_.resize(static_cast<std::size_t>(o) + 1);
    }
    std::vector<double> c_;
};

// V-variate truncated Taylor expansion, each variable to order N.
template <int V, int N>
class Jet {
public:
    static constexpr int S = N + 1;
    static constexpr int size = [] {
        int s = 1;
        for (int i = 0; i < V; ++i) s *= S;
        return s;
    }();

    Jet() { c_.fill(0.0); }
    explicit Jet(double constant) : Jet() { c_[0] = constant; }
    static Jet variable(int var, double x0) {
        Jet j(x0);
        if (N >= 1) j.c_[stride(var)] = 1;
        return j;
    }

    static constexpr int max_degree() { return V * N; }
    double constant() const { return c_[0]; }
    void set_constant(double v) { c_[0] = v; }
    Jet constant_like(double v) const { return Jet(v); }

    double coeff(const std::array<int, V>& idx) const { return c_[flat(idx)]; }
    // Mixed partial derivative at the expansion point.
    double derivative(const std::array<int, V>& idx) const {
        double f = 1;
        for (int v = 0; v < V; ++v) {
            if (idx[v] > N) throw std::domain_error("jet derivative beyond the configured order");
            for (int i = 2; i <= idx[v]; ++i) f *= i;
        }
        return c_[flat(idx)] * f;
    }

    Jet& operator+=(const Jet& o) {
        for (int i = 0; i < size; ++i) c_[i] += o.c_[i];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (int i = 0; i < size; ++i) c_[i] -= o.c_[i];
        return *this;
    }
    Jet& operator+=(double s) { c_[0] += s; return *this; }
    Jet& operator-=(double s) { c_[0] -= s; return *this; }
    Jet& operator*=(double s) {
        for (auto& x : c_) x *= s;
        return *this;
    }
    Jet& operator/=(double s) { return *this *= 1.0 / s; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        for (const auto& [i, j, k] : table()) r.c_[k] += a.c_[i] * b.c_[j];
        return r;
    }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }

private:
    static constexpr int stride(int var) {
        int s = 1;
        for (int i = 0; i < var; ++i) s *= S;
        return s;
    }
    static int flat(const std::array<int, V>& idx) {
        int f = 0;
        for (int v = V - 1; v >= 0; --v) f = f * S + idx[v];
        return f;
    }
    static const std::vector<std::array<int, 3>>& table() {
        static const std::vector<std::array<int, 3>> t = [] {
            std::vector<std::array<int, 3>> out;
            for (int i = 0; i < size; ++i)
                for (int j = 0; j < size; ++j) {
                    int a = i, b = j, k = 0, mul = 1;
                    bool ok = true;
                    for (int v = 0; v < V; ++v) {
                        int s = a % S + b % S;
                        if (s > N) { ok = false; break; }
                        k += s * mul;
                        mul *= S;
                        a /= S;
                        b /= S;
                    }
                    if (ok) out.push_back({i, j, k});
                }
            return out;
        }();
        return t;
    }

    std::array<double, size> c_;
};

template <class J> J operator+(J a, const J& b) requires requires { a.constant_like(0.0); } { return a += b; }
template <class J> J operator-(J a, const J& b) requires requires { a.constant_like(0.0); } { return a -= b; }
template <class J> J operator-(J a) requires requires { a.constant_like(0.0); } { return a *= -1.0; }
template <class J> J operator+(J a, double s) requires requires { a.constant_like(0.0); } { return a += s; }
template <class J> J operator+(double s, J a) requires requires { a.constant_like(0.0); } { return a += s; }
template <class J> J operator-(J a, double s) requires requires { a.constant_like(0.0); } { return a -= s; }
template <class J> J operator-(double s, J a) requires requires { a.constant_like(0.0); } { return (a *= -1.0) += s; }
template <class J> J operator*(J a, double s) requires requires { a.constant_like(0.0); } { return a *= s; }
template <class J> J operator*(double s, J a) requires requires { a.constant_like(0.0); } { return a *= s; }
template <class J> J operator/(J a, double s) requires requires { a.constant_like(0.0); } { return a /= s; }

// f(x) given the Taylor coefficients a_k = f^{(k)}(x0)/k! of f at x0 = x.constant().
template <class J>
J compose_taylor(const J& x, const std::vector<double>& a) {
    J h = x;
    h.set_constant(0);
    int K = std::min<int>(static_cast<int>(a.size()) - 1, x.max_degree());
    J r = x.constant_like(a[static_cast<std::size_t>(K)]);
    for (int k = K - 1; k >= 0; --k) {
        r = r * h;
        r += a[static_cast<std::size_t>(k)];
    }
    return r;
}

namespace detail {
template <class J>
int degree(const J& x) { return x.max_degree(); }
}  // namespace detail

template <class J>
J exp(const J& x) {
    int K = detail::degree(x);
    std::vector<double> a(K + 1);
    double e = std::exp(x.constant()), f = 1;
    for (int k = 0; k <= K; ++k) {
        if (k > 0) f *= k;
        a[k] = e / f;
    }
    return compose_taylor(x, a);
}

template <class J>
J expm1(const J& x) {
    J r = exp(x);
    r.set_constant(std::expm1(x.constant()));
    return r;
}

template <class J>
J sinh(const J& x) {
    int K = detail::degree(x);
    std::vector<double> a(K + 1);
    double s = std::sinh(x.constant()), c = std::cosh(x.constant()), f = 1;
    for (int k = 0; k <= K; ++k) {
        if (k > 0) f *= k;
        a[k] = (k % 2 == 0 ? s : c) / f;
    }
    return compose_taylor(x, a);
}

template <class J>
J cosh(const J& x) {
    int K = detail::degree(x);
    std::vector<double> a(K + 1);
    double s = std::sinh(x.constant()), c = std::cosh(x.constant()), f = 1;
    for (int k = 0; k <= K; ++k) {
        if (k > 0) f *= k;
        a[k] = (k % 2 == 0 ? c : s) / f;
    }
    return compose_taylor(x, a);
}

template <class J>
J log(const J& x) {
    double x0 = x.constant();
    if (!(x0 > 0)) throw std::domain_error("jet log of non-positive value");
    int K = detail::degree(x);
    std::vector<double> a(K + 1);
    a[0] = std::log(x0);
    double p = 1;
    for (int k = 1; k <= K; ++k) {
        p /= x0;
        a[k] = (k % 2 == 1 ? 1.0 : -1.0) * p / k;
    }
    return compose_taylor(x, a);
}

// x^r for real r, x0 > 0.
template <class J>
J pow(const J& x, double r) {
    double x0 = x.constant();
    if (!(x0 > 0)) throw std::domain_error("jet power of non-positive value");
    int K = detail::degree(x);
    std::vector<double> a(K + 1);
    double binom = 1;
    for (int k = 0; k <= K; ++k) {
        a[k] = binom * std::pow(x0, r - k);
        binom *= (r - k) / (k + 1);
    }
    return compose_taylor(x, a);
}

template <class J>
J sqrt(const J& x) { return pow(x, 0.5); }

template <class J>
J reciprocal(const J& x) {
    double x0 = x.constant();
    if (x0 == 0) throw std::domain_error("jet reciprocal of zero");
    int K = detail::degree(x);
    std::vector<double> a(K + 1);
    double p = 1 / x0;
    for (int k = 0; k <= K; ++k) {
        a[k] = (k % 2 == 0 ? p : -p);
        p /= x0;
    }
    return compose_taylor(x, a);
}

template <class J>
J operator/(const J& a, const J& b) requires requires { a.constant_like(0.0); } { return a * reciprocal(b); }

template <class J>
J operator/(double s, const J& b) requires requires { b.constant_like(0.0); } { return reciprocal(b) * s; }

}  // namespace wcm::analytic
