#pragma once

#include <cmath>
#include <vector>

#include "wcm/analytic/params.hpp"

namespace wcm::analytic {

// u(T) = d/dT log C_g(T) - Sigma, written stably; equals Sigma(alpha-Sigma) e^{-Sigma T}/C_g(T).
inline double u_minus_sigma(const GrandCanonicalParams& p, double T) {
    if (std::isinf(T)) return 0.0;
    double x = 2 * p.sigma * T;
    double e = std::exp(-x);
    double h = x == 0 ? T : -std::expm1(-x) / (2 * p.sigma);
    return 2 * (p.alpha - p.sigma) * e / ((1 + e) + 2 * p.alpha * h);
}

inline double u_of_T(const GrandCanonicalParams& p, double T) { return p.sigma + u_minus_sigma(p, T); }

// Polynomial in u, stored in the shifted variable v = u - Sigma so that
// evaluation near T = inf (v -> 0) is free of cancellation.
class UPolynomial {
public:
    UPolynomial() = default;
    UPolynomial(double sigma, std::vector<double> v_coeffs) : sigma_(sigma), c_(std::move(v_coeffs)) {}

    static UPolynomial constant(double sigma, double c) { return {sigma, {c}}; }
    static UPolynomial u(double sigma) { return {sigma, {sigma, 1.0}}; }

    double sigma() const { return sigma_; }
    const std::vector<double>& v_coefficients() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    // Coefficients in u itself.
    std::vector<double> u_coefficients() const {
        std::vector<double> out(c_.size(), 0.0);
        // (u - sigma)^k expanded binomially
        for (std::size_t k = 0; k < c_.size(); ++k) {
            double binom = 1;
            for (std::size_t i = 0; i <= k; ++i) {
                out[i] += c_[k] * binom * std::pow(-sigma_, static_cast<double>(k - i));
                binom = binom * static_cast<double>(k - i) / static_cast<double>(i + 1);
            }
        }
        return out;
    }

    double eval_v(double v) const {
        double r = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * v + *it;
        return r;
    }
    double eval_u(double u) const { return eval_v(u - sigma_); }
    double at(const GrandCanonicalParams& p, double T) const { return eval_v(u_minus_sigma(p, T)); }
    double at_zero(const GrandCanonicalParams& p) const { return eval_v(p.alpha - p.sigma); }
    double at_infinity() const { return c_.empty() ? 0.0 : c_[0]; }

    // D with Du = Sigma^2 - u^2 = -2 Sigma v - v^2.
    UPolynomial D() const {
        std::vector<double> out(c_.size() + 1, 0.0);
        for (std::size_t k = 1; k < c_.size(); ++k) {
            double dk = static_cast<double>(k) * c_[k];
            out[k] += -2 * sigma_ * dk;
            out[k + 1] += -dk;
        }
        return {sigma_, trim(out)};
    }

    // sum_k ops[k] D^k applied to this.
    UPolynomial apply(const std::vector<double>& ops) const {
        UPolynomial acc = constant(sigma_, 0.0), term = *this;
        for (std::size_t k = 0; k < ops.size(); ++k) {
            if (k > 0) term = term.D();
            acc = acc + term * ops[k];
        }
        return acc;
    }

    friend UPolynomial operator+(const UPolynomial& a, const UPolynomial& b) {
        std::vector<double> out(std::max(a.c_.size(), b.c_.size()), 0.0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
        return {a.sigma_, trim(out)};
    }
    friend UPolynomial operator-(const UPolynomial& a, const UPolynomial& b) { return a + b * -1.0; }
    friend UPolynomial operator*(const UPolynomial& a, double s) {
        std::vector<double> out = a.c_;
        for (auto& x : out) x *= s;
        return {a.sigma_, out};
    }
    friend UPolynomial operator*(const UPolynomial& a, const UPolynomial& b) {
        std::vector<double> out(a.c_.size() + b.c_.size(), 0.0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        return {a.sigma_, trim(out)};
    }

private:
    static std::vector<double> trim(std::vector<double> v) {
        while (v.size() > 1 && v.back() == 0.0) v.pop_back();
        return v;
    }

    double sigma_ = 0;
    std::vector<double> c_{0.0};
};

// d^2/dT^2 log C_g = Sigma^2 - u^2.
inline UPolynomial second_log_derivative(double sigma) { return UPolynomial::u(sigma).D(); }

}  // namespace wcm::analytic
