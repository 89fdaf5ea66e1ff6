#pragma once

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace wcm::experiments {

struct ChiSquareResult {
    double statistic = 0;
    int dof = 0;
    double p_value = 1;
};

inline double chi_square_p_value(double stat, int dof) {
    if (dof <= 0) return 1.0;
    return boost::math::cdf(boost::math::complement(boost::math::chi_squared(dof), stat));
}

// Goodness of fit of counts against cell probabilities; cells with expected count < min_expected are pooled.
inline ChiSquareResult chi_square_gof(const std::vector<std::uint64_t>& counts, const std::vector<double>& probs,
                                      double min_expected = 5) {
    if (counts.size() != probs.size() || counts.empty()) throw std::invalid_argument("chi_square_gof: size mismatch");
    double n = 0, ptot = 0;
    for (auto c : counts) n += static_cast<double>(c);
    for (double p : probs) ptot += p;
    if (n == 0) throw std::domain_error("chi_square_gof: no observations");
    ChiSquareResult r;
    double pool_obs = 0, pool_exp = 0;
    int cells = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        double e = n * probs[i] / ptot, o = static_cast<double>(counts[i]);
        if (e < min_expected) {
            pool_obs += o;
            pool_exp += e;
            continue;
        }
        r.statistic += (o - e) * (o - e) / e;
        ++cells;
    }
    if (pool_exp > 0) {
        if (pool_exp < min_expected && cells == 0) throw std::domain_error("chi_square_gof: insufficient expected counts");
        r.statistic += (pool_obs - pool_exp) * (pool_obs - pool_exp) / pool_exp;
        ++cells;
    } else if (pool_obs > 0) {
        r.statistic = INFINITY;
    }
    r.dof = cells - 1;
    r.p_value = std::isinf(r.statistic) ? 0.0 : chi_square_p_value(r.statistic, r.dof);
    return r;
}

// Two-sample homogeneity test on a common set of cells.
inline ChiSquareResult chi_square_two_sample(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("chi_square_two_sample: size mismatch");
    double na = 0, nb = 0;
    for (auto c : a) na += static_cast<double>(c);
    for (auto c : b) nb += static_cast<double>(c);
    if (na == 0 || nb == 0) throw std::domain_error("chi_square_two_sample: empty sample");
    ChiSquareResult r;
    int cells = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double tot = static_cast<double>(a[i] + b[i]);
        if (tot == 0) continue;
        double ea = tot * na / (na + nb), eb = tot * nb / (na + nb);
        r.statistic += (a[i] - ea) * (a[i] - ea) / ea + (b[i] - eb) * (b[i] - eb) / eb;
        ++cells;
    }
    r.dof = cells - 1;
    r.p_value = chi_square_p_value(r.statistic, r.dof);
    return r;
}

// sup |F_emp - F| for a sample (sorted in place).
inline double ks_statistic(std::vector<double>& sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::domain_error("ks_statistic: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        double f = cdf(sample[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

// Asymptotic one-sample KS critical value at the 1% level.
inline double ks_threshold_1pct(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

}  // namespace wcm::experiments
