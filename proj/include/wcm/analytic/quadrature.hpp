#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>

namespace wcm::analytic {

template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-12, unsigned max_depth = 18) {
    double err = 0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, tol, &err);
}

// Integral over [0, inf) split into geometrically growing panels of base width `scale`.
template <class F>
double integrate_half_line(F&& f, double scale, double tol = 1e-12) {
    double total = 0, a = 0, w = scale;
    for (int panel = 0; panel < 60; ++panel) {
        double b = a + w;
        double part = integrate(f, a, b, tol);
        total += part;
        a = b;
        w *= 2;
        if (panel > 3 && std::abs(part) <= 1e-18 * std::max(1.0, std::abs(total))) return total;
    }
    double err = 0;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        f, a, std::numeric_limits<double>::infinity(), 18, tol, &err);
    return total;
}

template <class F>
double integrate_endpoint_singular(F&& f, double a, double b, double tol = 1e-13) {
    boost::math::quadrature::tanh_sinh<double> ts;
    return ts.integrate(f, a, b, tol);
}

}  // namespace wcm::analytic
