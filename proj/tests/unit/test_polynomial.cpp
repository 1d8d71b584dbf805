#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "surfride/error.hpp"
#include "surfride/polynomial.hpp"

using namespace surfride;

TEST(PolynomialCurve, HornerEvaluation) {
    const PolynomialCurve r({0.0, 10.0, 5.0, 0.0, 0.0, 0.1});
    EXPECT_DOUBLE_EQ(r(2.0), 43.2);
    EXPECT_DOUBLE_EQ(PolynomialCurve({0.0, 0.0, 1.0})(3.0), 9.0);
    EXPECT_DOUBLE_EQ(PolynomialCurve({7.5, 2.0, -1.0})(0.0), 7.5);
}

TEST(PolynomialCurve, ZeroLeadingCoefficientNeedsFlag) {
    EXPECT_THROW(PolynomialCurve({1.0, 0.0}), ValidationError);
    EXPECT_NO_THROW(PolynomialCurve({1.0, 0.0}, 0.0, true));
    EXPECT_NO_THROW(PolynomialCurve({0.0}));
    EXPECT_THROW(PolynomialCurve(std::vector<double>{}), ValidationError);
}

TEST(FitPolynomial, ExactQuadratic) {
    const std::vector<Sample> s{{0, 0}, {1, 2}, {2, 8}, {3, 18}};
    const auto c = fit_polynomial(s, 2);
    ASSERT_EQ(c.degree(), 2);
    EXPECT_NEAR(c.coefficient(0), 0.0, 1e-12);
    EXPECT_NEAR(c.coefficient(1), 0.0, 1e-12);
    EXPECT_NEAR(c.coefficient(2), 2.0, 1e-12);
    EXPECT_NEAR(c.residual_rms(), 0.0, 1e-12);
}

TEST(FitPolynomial, ConstantFit) {
    const std::vector<Sample> s{{0, 1}, {1, 1}, {2, 1}};
    const auto c = fit_polynomial(s, 0);
    ASSERT_EQ(c.degree(), 0);
    EXPECT_NEAR(c.coefficient(0), 1.0, 1e-14);
}

TEST(FitPolynomial, QuinticRoundTrip) {
    const std::vector<double> truth{0.0, 3000.0, 800.0, -12.0, 1.5, 0.5};
    const PolynomialCurve q(truth);
    std::vector<Sample> s;
    for (int i = 0; i < 7; ++i) s.push_back({1.0 + 1.5 * i, q(1.0 + 1.5 * i)});
    const auto c = fit_polynomial(s, 5);
    for (int i = 0; i <= 5; ++i) {
        EXPECT_NEAR(c.coefficient(i), truth[i], 1e-9 * std::max(1.0, std::abs(truth[i]))) << i;
    }
}

TEST(FitPolynomial, RandomNoiselessRecovery) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int degree = 1 + trial % 5;
        std::vector<double> truth(degree + 1);
        for (auto& c : truth) c = coef(rng);
        if (std::abs(truth.back()) < 0.1) truth.back() = 1.0;
        const PolynomialCurve p(truth);
        std::vector<Sample> s;
        for (int i = 0; i < 3 * (degree + 1); ++i) {
            const double x = -2.0 + 4.0 * i / (3.0 * (degree + 1) - 1.0);
            s.push_back({x, p(x)});
        }
        const auto fit = fit_polynomial(s, degree);
        for (int i = 0; i <= degree; ++i) {
            EXPECT_NEAR(fit.coefficient(i), truth[i], 1e-9 * std::max(1.0, std::abs(truth[i])));
        }
    }
}

TEST(FitPolynomial, Underdetermined) {
    const std::vector<Sample> s{{0, 1}, {1, 2}};
    EXPECT_THROW(fit_polynomial(s, 2), FitError);
}

TEST(FitPolynomial, RepeatedAbscissae) {
    const std::vector<Sample> s{{1, 1}, {1, 2}, {1, 3}, {1, 4}};
    EXPECT_THROW(fit_polynomial(s, 1), FitError);
}

TEST(FitPolynomial, ConditioningGuard) {
    std::vector<Sample> s;
    for (int i = 0; i < 12; ++i) s.push_back({static_cast<double>(i), std::sin(i * 1.0)});
    FitOptions tight;
    tight.max_condition = 10.0;
    EXPECT_THROW(fit_polynomial(s, 8, tight), FitError);
}

TEST(FitPolynomial, ResidualRmsOfNoisyLine) {
    // y = x + (+-0.1 alternating): best line is y = x, rms 0.1.
    std::vector<Sample> s;
    for (int i = 0; i < 10; ++i) s.push_back({double(i), i + (i % 2 ? 0.1 : -0.1)});
    const auto c = fit_polynomial(s, 1);
    EXPECT_NEAR(c.residual_rms(), 0.1, 2e-3);
}
