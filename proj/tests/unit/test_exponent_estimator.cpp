#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "tomolyap/errors.hpp"
#include "tomolyap/exponent_estimator.hpp"

using namespace tomolyap;

namespace {

template <class F>
std::vector<double> sample(std::size_t n, F f) {
    std::vector<double> out(n);
    for (std::size_t t = 0; t < n; ++t) out[t] = f(static_cast<double>(t));
    return out;
}

}  // namespace

TEST(Estimator, PureExponentials) {
    for (double rate : {0.5, 0.962424, -0.3}) {
        const auto norms = sample(201, [&](double t) { return 3.0 * std::exp(rate * t); });
        const ExponentEstimate e = estimate_exponent_from_norms(norms);
        EXPECT_NEAR(e.slope, rate, 1e-10);
        EXPECT_EQ(e.classification, rate > 0 ? Classification::Positive : Classification::Negative);
        EXPECT_EQ(e.window.lo, 100u);
        EXPECT_EQ(e.window.hi, 200u);
    }
}

TEST(Estimator, PolynomialGrowthIsZero) {
    const auto norms = sample(201, [](double t) { return t * t * t + 1.0; });
    const ExponentEstimate corrected = estimate_exponent_from_norms(norms);
    EXPECT_LT(std::abs(corrected.slope), 1e-3);
    EXPECT_EQ(corrected.classification, Classification::Zero);

    EstimatorOptions plain;
    plain.model = GrowthModel::Exponential;
    const ExponentEstimate e = estimate_exponent_from_norms(norms, plain);
    EXPECT_GT(e.slope, 0.01);
}

TEST(Estimator, ConstantAndOscillatingSeries) {
    const auto flat = sample(101, [](double) { return 2.0; });
    const ExponentEstimate e = estimate_exponent_from_norms(flat);
    EXPECT_NEAR(e.slope, 0.0, 1e-14);
    EXPECT_EQ(e.classification, Classification::Zero);

    const auto wobble = sample(201, [](double t) { return 2.0 + std::sin(1.3 * t); });
    EXPECT_EQ(estimate_exponent_from_norms(wobble).classification, Classification::Zero);
}

TEST(Estimator, NoisyExponentialWithinStderr) {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> noise(0.0, 0.3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto norms = sample(401, [&](double t) { return std::exp(0.2 * t + noise(rng)); });
        EstimatorOptions plain;
        plain.model = GrowthModel::Exponential;
        const ExponentEstimate e = estimate_exponent_from_norms(norms, plain);
        EXPECT_GT(e.std_error, 0.0);
        EXPECT_LT(std::abs(e.slope - 0.2), 5.0 * e.std_error);
        EXPECT_EQ(e.classification, Classification::Positive);
    }
}

TEST(Estimator, ExplicitWindow) {
    auto norms = sample(101, [](double t) { return std::exp(0.1 * t); });
    for (std::size_t t = 60; t < norms.size(); ++t) norms[t] = norms[60];
    EstimatorOptions o;
    o.window = FitWindow{10, 50};
    EXPECT_NEAR(estimate_exponent_from_norms(norms, o).slope, 0.1, 1e-10);
    o.window = FitWindow{50, 200};
    EXPECT_THROW(estimate_exponent_from_norms(norms, o), ValidationError);
}

TEST(Estimator, SeriesNorm) {
    DerivativeSeries s;
    s.g2 = {{3.0, 0.0}, {0.0, 1.0}};
    s.g3 = {{0.0, 4.0}, {1.0, 1.0}};
    EXPECT_DOUBLE_EQ(s.norm(0), 5.0);
    EXPECT_DOUBLE_EQ(s.norm(1), std::sqrt(3.0));
    EXPECT_EQ(s.norms().size(), 2u);
}

TEST(Estimator, Errors) {
    EXPECT_THROW(estimate_exponent_from_norms(std::vector<double>(8, 1.0)), ValidationError);
    EXPECT_THROW(estimate_exponent_from_norms(std::vector<double>(64, 0.0)), DegenerateSeriesError);
    auto bad = std::vector<double>(64, 1.0);
    bad[50] = std::numeric_limits<double>::infinity();
    EXPECT_THROW(estimate_exponent_from_norms(bad), NumericalError);
    DerivativeSeries s;
    s.g2.resize(20);
    s.g3.resize(19);
    EXPECT_THROW(estimate_exponent(s), ValidationError);
}

TEST(RunningEstimate, ExactExponential) {
    const auto norms = sample(101, [](double t) { return std::exp(0.7 * t); });
    const auto r = running_estimate(norms);
    ASSERT_FALSE(r.empty());
    EXPECT_EQ(r.front().t, 11u);
    EXPECT_EQ(r.back().t, 100u);
    for (const auto& p : r) EXPECT_NEAR(p.lambda, 0.7, 1e-12);
    EXPECT_EQ(running_estimate(norms, 0).front().t, 1u);
}

TEST(RunningEstimate, TailDecreasing) {
    const auto poly = sample(201, [](double t) { return 1.0 + t * t; });
    EXPECT_TRUE(tail_decreasing(running_estimate(poly)));
    const auto accel = sample(201, [](double t) { return std::exp(1e-4 * t * t); });
    EXPECT_FALSE(tail_decreasing(running_estimate(accel)));
    EXPECT_THROW(running_estimate(std::vector<double>{1, 1}), ValidationError);
    auto with_zero = sample(50, [](double) { return 1.0; });
    with_zero[4] = 0.0;
    EXPECT_THROW(running_estimate(with_zero), DegenerateSeriesError);
}
