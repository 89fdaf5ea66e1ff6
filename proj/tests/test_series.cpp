#include <gtest/gtest.h>

#include <random>

#include "wcm/series/bivariate.hpp"
#include "wcm/series/two_point_series.hpp"

using namespace wcm::series;

namespace {

ExpPoly E(std::initializer_list<std::tuple<int, int, long, long>> terms) {
    ExpPoly p;
    for (auto [k, m, n, d] : terms) p.add_term(k, m, rat(n, d));
    return p;
}

ExpPoly random_expoly(std::mt19937& rng) {
    std::uniform_int_distribution<int> km(0, 3), coef(-9, 9), nterms(0, 4);
    ExpPoly p;
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) p.add_term(km(rng), km(rng), rat(coef(rng), 1 + km(rng)));
    return p;
}

}  // namespace

TEST(ExpPoly, DiffExamples) {
    EXPECT_EQ(expoly_diff(E({{1, 1, 1, 1}})), E({{0, 1, 1, 1}, {1, 1, -1, 1}}));
    EXPECT_EQ(expoly_diff(E({{0, 2, 1, 1}})), E({{0, 2, -2, 1}}));
    EXPECT_TRUE(expoly_diff(ExpPoly(rat(1))).is_zero());
}

TEST(ExpPoly, IntegrateExamples) {
    EXPECT_EQ(expoly_integrate(E({{1, 1, 1, 1}})), rat(1));
    EXPECT_EQ(expoly_integrate(E({{1, 1, 6, 1}, {0, 2, 4, 1}, {0, 1, -4, 1}})), rat(4));
    EXPECT_THROW(expoly_integrate(ExpPoly(rat(1))), std::domain_error);
}

TEST(ExpPoly, RingAxiomsRandomized) {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        ExpPoly a = random_expoly(rng), b = random_expoly(rng), c = random_expoly(rng);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ(expoly_diff(a * b), expoly_diff(a) * b + a * expoly_diff(b));
    }
}

TEST(ExpPoly, IntegralOfDerivativeIsMinusValueAtZero) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        ExpPoly f, r = random_expoly(rng);
        for (const auto& [key, c] : r.terms()) f.add_term(key.k, key.m + 1, c);
        EXPECT_EQ(expoly_integrate(expoly_diff(f)), -f.at_zero());
    }
}

TEST(ExpPoly, FloatingIntegralUpTo) {
    ExpPoly f = E({{2, 1, 3, 1}, {0, 2, -1, 2}, {1, 0, 1, 3}});
    double T = 1.7;
    // antiderivative oracle: 3(2 - e^{-T}(T^2+2T+2)) - (1 - e^{-2T})/4 + T^2/6
    double expect = 3 * (2 - std::exp(-T) * (T * T + 2 * T + 2)) - (1 - std::exp(-2 * T)) / 4 + T * T / 6;
    EXPECT_NEAR(expoly_integrate_upto(f, T), expect, 1e-14);
}

TEST(PowerSeries, RingAxiomsRandomized) {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> coef(-20, 20);
    auto rnd = [&] {
        RationalSeries s(6);
        for (int i = 0; i <= 6; ++i) s[i] = rat(coef(rng), 1 + std::abs(coef(rng)));
        return s;
    };
    for (int trial = 0; trial < 50; ++trial) {
        auto a = rnd(), b = rnd(), c = rnd();
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        if (a[0] != 0) {
            EXPECT_EQ(a * inverse(a), constant_series(6, rat(1)));
        }
    }
}

TEST(PowerSeries, AlphaSeriesDisplay) {
    auto a = alpha_series(4);
    EXPECT_EQ(a[0], rat(1, 2));
    EXPECT_EQ(a[1], rat(-2));
    EXPECT_EQ(a[2], rat(-12));
    EXPECT_EQ(a[3], rat(-128));
    EXPECT_EQ(a[4], rat(-1680));
    EXPECT_EQ(alpha_series(0)[0], rat(1, 2));
}

TEST(PowerSeries, SigmaSeriesDisplay) {
    auto s = sigma_series(4);
    std::vector<long> expect{0, -3, -21, -246, -3453};
    EXPECT_EQ(s[0], rat(1, 2));
    for (int i = 1; i <= 4; ++i) EXPECT_EQ(s[i], rat(expect[i])) << i;
}

TEST(PowerSeries, AlphaSatisfiesCubicToOrder) {
    for (int n : {1, 5, 12}) {
        auto a = alpha_series(n);
        auto r = a * a * a - a * rat(1, 4) + g_series(n);
        EXPECT_EQ(r.valuation(), n + 1) << n;
    }
}

TEST(PowerSeries, SqrtAndCompose) {
    auto s = sigma_series(8);
    auto a = alpha_series(8);
    EXPECT_EQ(s * s, a * a * rat(3, 2) - constant_series(8, rat(1, 8)));
    // (1 + g)^2 composed with h = g/(1-g) -> 1/(1-g)^2
    RationalSeries f(8);
    f[0] = 1;
    f[1] = 2;
    f[2] = 1;
    RationalSeries h = g_series(8) * inverse(constant_series(8, rat(1)) - g_series(8));
    auto lhs = compose(f, h);
    auto one_minus_g = constant_series(8, rat(1)) - g_series(8);
    EXPECT_EQ(lhs, inverse(one_minus_g * one_minus_g));
}

TEST(TwoPointSeries, G1Display) {
    auto G = g1_series(3);
    EXPECT_TRUE(G[0].is_zero());
    EXPECT_EQ(G[1], E({{0, 1, 1, 1}}));
    EXPECT_EQ(G[2], E({{1, 1, 6, 1}, {0, 2, 4, 1}, {0, 1, -4, 1}}));
    EXPECT_EQ(G[3], E({{2, 1, 18, 1}, {1, 2, 48, 1}, {1, 1, 18, 1}, {0, 3, 9, 1}, {0, 2, 40, 1}, {0, 1, -49, 1}}));
}

TEST(TwoPointSeries, G2Display) {
    auto G = two_point_series(2, 2, 3);
    EXPECT_TRUE(G[1].is_zero());
    EXPECT_EQ(G[2], E({{0, 2, 1, 1}}));
    EXPECT_EQ(G[3], E({{1, 2, 12, 1}, {0, 3, 9, 1}, {0, 2, -14, 1}, {0, 1, 9, 1}}));
}

TEST(TwoPointSeries, IntegralsMatchClosedFormsOrderByOrder) {
    const int n = 8;
    auto a = alpha_series(n);
    auto g = g_series(n);
    auto ginv = inverse(a);
    // g/(2 alpha) and g(1-2a)(5-6a)/(32 a)
    auto one = constant_series(n, rat(1));
    auto i11 = g * ginv * rat(1, 2);
    auto i22 = g * (one - a * rat(2)) * (constant_series(n, rat(5)) - a * rat(6)) * ginv * rat(1, 32);
    auto G1 = g1_series(n);
    auto G2 = two_point_series(2, 2, n);
    for (int p = 1; p <= n; ++p) {
        EXPECT_EQ(expoly_integrate(G1[p]), i11[p]) << p;
        EXPECT_EQ(expoly_integrate(G2[p]), i22[p]) << p;
    }
}

TEST(TwoPointSeries, ValuesAtZero) {
    const int n = 7;
    auto G1 = g1_series(n);
    EXPECT_EQ(G1[1].at_zero(), rat(1));
    for (int p = 2; p <= n; ++p) EXPECT_EQ(G1[p].at_zero(), rat(0)) << p;
}

TEST(TwoPointSeries, MaxIdentity) {
    const int n = 6;
    auto G2 = two_point_series(2, 2, n);
    auto G23 = two_point_series(2, 3, n);
    auto Gm = max_series(n);
    for (int p = 0; p <= n; ++p) {
        EXPECT_EQ(expoly_diff(G2[p]), G23[p] - Gm[p] * rat(2)) << p;
        EXPECT_EQ(G23[p] + Gm[p] * rat(2), G2[p] * rat(4, 3) - expoly_diff(G2[p]) * rat(1, 3)) << p;
    }
}

TEST(Bivariate, SigmaALeadingTermsAndResidual) {
    auto sa = solve_sigma_a(4, 5);
    EXPECT_EQ(sa.sigma.coeff(0, 1), rat(1));
    EXPECT_EQ(sa.sigma.coeff(0, 0), rat(0));
    EXPECT_EQ(sa.a.coeff(1, 0), rat(1));
    for (int i = 0; i <= 4; ++i) EXPECT_EQ(sa.a.coeff(i, 0), i == 1 ? rat(1) : rat(0));
    auto rx = wcm::series::detail::x_rhs(sa.sigma, sa.a) - BivariateSeries::x(4, 5);
    auto rz = wcm::series::detail::z_rhs(sa.sigma, sa.a) - BivariateSeries::z(4, 5);
    EXPECT_TRUE(rx.is_zero());
    EXPECT_TRUE(rz.is_zero());
}

TEST(Bivariate, DiscreteTwoPointSingleEdge) {
    auto sa = solve_sigma_a(1, 1);
    auto G = discrete_two_point_series(sa, 1);
    EXPECT_EQ(G.coeff(1, 1), rat(1));
    EXPECT_EQ(G.coeff(0, 1), rat(0));
    EXPECT_EQ(G.coeff(1, 0), rat(0));
}
