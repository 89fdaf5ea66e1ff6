#include <gtest/gtest.h>

#include "wcm/analytic/disk.hpp"
#include "wcm/analytic/two_point.hpp"

using namespace wcm::analytic;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
}  // namespace

TEST(Disk, FallsOffLikeGOverZ) {
    auto p = make_params(0.04);
    double prev = 1e9;
    for (double z : {10.0, 100.0, 1000.0, 10000.0}) {
        double d = std::abs(z * disk_function(p, z) - p.g);
        EXPECT_LT(d, prev);
        prev = d;
    }
    EXPECT_LT(prev, 1e-5);
    EXPECT_THROW(disk_function(p, p.alpha), std::domain_error);
}

TEST(Disk, CoefficientsMatchLargeZExpansion) {
    for (double g : {0.01, 0.04}) {
        auto p = make_params(g);
        auto W = disk_coefficients(p, 12);
        EXPECT_NEAR(W[0], g, 1e-15);
        double z = 40, s = 0, zp = 1 / z;
        for (double w : W) {
            s += w * zp;
            zp /= z;
        }
        EXPECT_LT(rel(disk_function(p, z), s), 1e-12);
    }
}

TEST(Disk, ZhatRangeAndMonotonicity) {
    for (double g : {0.01, 0.04, kCriticalG - 1e-7}) {
        auto p = make_params(g);
        EXPECT_NEAR(zhat(p, std::numeric_limits<double>::infinity()), p.alpha + 0.5, 1e-15);
        EXPECT_TRUE(std::isinf(zhat(p, 0.0)));
        double prev = std::numeric_limits<double>::infinity();
        for (double T = 0.01; T < 1e4; T *= 1.5) {
            double z = zhat(p, T);
            if (T < 30) {
                EXPECT_LT(z, prev);
            }
            EXPECT_LE(z, prev);
            EXPECT_GE(z, p.alpha + 0.5);
            prev = z;
        }
        EXPECT_NEAR(zhat(p, 1e6), p.alpha + 0.5, 1e-6);
    }
    EXPECT_THROW(zhat(make_params(0.04), -1.0), std::domain_error);
}

TEST(Disk, ZhatCriticalClosedForm) {
    auto p = make_params(kCriticalG);
    p.sigma = 0;
    p.beta = 1;
    for (double T : {0.5, 2.0, 10.0}) EXPECT_LT(rel(zhat(p, T), p.alpha + 0.5 + 1 / (T * (1 + p.alpha * T))), 1e-12);
}

TEST(Disk, CharacteristicEquation) {
    for (double g : {0.01, 0.04, 0.048}) {
        auto p = make_params(g);
        for (double T : {0.1, 0.7, 3.0, 12.0}) {
            Taylor z = zhat_jet(p, Taylor::variable(2, T));
            double zp = z.derivative(1), z0 = z[0];
            double rhs = z0 - z0 * z0 - 2 * disk_function(p, z0);
            EXPECT_NEAR(zp, rhs, 1e-9 * std::max(1.0, std::abs(zp))) << g << " " << T;
        }
    }
}

TEST(Disk, FlowOfDiskFunctionIsG1) {
    for (double g : {0.01, 0.04, 0.048}) {
        auto p = make_params(g);
        for (double T : {0.2, 1.0, 5.0}) {
            Taylor w = disk_function_jet(p, zhat_jet(p, Taylor::variable(1, T)));
            EXPECT_LT(rel(w.derivative(1), two_point(1, 1, p, T)), 1e-9) << g << " " << T;
        }
    }
}

TEST(GeneralCoefficient, AgreesWithUAlgebra) {
    for (double g : {0.01, 0.04, 0.048}) {
        auto p = make_params(g);
        for (double T : {0.3, 1.5, 6.0})
            for (int d1 = 1; d1 <= 3; ++d1)
                for (int d2 = 1; d2 <= 3; ++d2) {
                    double a = general_two_point_coeff(p, d1, d2, T);
                    double b = two_point_poly(d1, d2, p.sigma).at(p, T);
                    EXPECT_LT(rel(a, b), 1e-9) << g << " " << T << " " << d1 << d2;
                }
    }
}

TEST(GeneralCoefficient, ThreeOneOperator) {
    auto p = make_params(0.04);
    UPolynomial G1 = two_point_poly(1, 1, p.sigma);
    UPolynomial op = G1.apply({2.0 / 6, 3.0 / 6, 1.0 / 6});
    for (double T : {0.5, 2.0}) EXPECT_LT(rel(general_two_point_coeff(p, 3, 1, T), op.at(p, T)), 1e-9);
}

TEST(GeneralCoefficient, Symmetry) {
    auto p = make_params(0.04);
    for (double T : {0.5, 2.0, 7.0})
        for (auto [a, b] : {std::pair{4, 2}, std::pair{5, 3}, std::pair{6, 1}, std::pair{5, 4}}) {
            double x = general_two_point_coeff(p, a, b, T), y = general_two_point_coeff(p, b, a, T);
            EXPECT_NEAR(x, y, 1e-10 * std::max(1.0, std::abs(y))) << a << b << " " << T;
        }
}

TEST(GeneralCoefficient, LoopRecursionOracle) {
    // G^{(4,d)} = [(3 + d_T) G^{(3,d)} - 2 g G^{(1,d)}]/4
    for (double g : {0.02, 0.045}) {
        auto p = make_params(g);
        for (int d2 = 1; d2 <= 3; ++d2) {
            UPolynomial G3 = two_point_poly(3, d2, p.sigma), G1 = two_point_poly(1, d2, p.sigma);
            UPolynomial G4 = (G3 * 3.0 + G3.D() - G1 * (2 * g)) * 0.25;
            for (double T : {0.4, 2.0, 8.0}) {
                EXPECT_LT(rel(two_point(4, d2, p, T), G4.at(p, T)), 1e-9) << g << " " << d2 << " " << T;
                EXPECT_LT(rel(two_point(d2, 4, p, T), G4.at(p, T)), 1e-9) << g << " " << d2 << " " << T;
            }
        }
    }
}

TEST(GeneralCoefficient, Errors) {
    auto p = make_params(0.04);
    EXPECT_THROW(general_two_point_coeff(p, 0, 1, 1.0), std::domain_error);
    EXPECT_THROW(general_two_point_coeff(p, 1, 1, 0.0), std::domain_error);
    EXPECT_THROW(general_two_point_coeff(p, kMaxJetOrder + 1, 1, 1.0), std::domain_error);
    EXPECT_THROW(general_two_point_coeff(p, 1, kMaxJetOrder, 1.0), std::domain_error);
}
