#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "tomolyap/classical_oracle.hpp"
#include "tomolyap/errors.hpp"
#include "tomolyap/standard_map.hpp"

using namespace tomolyap;

namespace {

const double kHyperbolic = std::log((3.0 + std::sqrt(5.0)) / 2.0);

Eigen::MatrixXd finite_difference_jacobian(const KickedMapSpec& spec, const Eigen::VectorXd& x) {
    const double h = 1e-6;
    const int d = static_cast<int>(x.size());
    Eigen::MatrixXd j(d, d);
    for (int c = 0; c < d; ++c) {
        Eigen::VectorXd xp = x, xm = x;
        xp(c) += h;
        xm(c) -= h;
        j.col(c) = (period_map(spec, xp) - period_map(spec, xm)) / (2 * h);
    }
    return j;
}

}  // namespace

TEST(Oracle, StandardMapFixedPoints) {
    EXPECT_NEAR(tangent_map_lyapunov(standard_map_spec(1.0), 10000), kHyperbolic, 1e-6);
    EXPECT_NEAR(tangent_map_lyapunov(standard_map_spec(1.0), 10000), classical_lyapunov(1.0), 1e-6);
    EXPECT_LT(std::abs(tangent_map_lyapunov(standard_map_spec(1.0, 1.0, std::numbers::pi), 10000)), 1e-3);
    EXPECT_LT(std::abs(tangent_map_lyapunov(standard_map_spec(-1.0), 10000)), 1e-3);
}

TEST(Oracle, LinearFamilies) {
    EXPECT_NEAR(tangent_map_lyapunov(harmonic_kick_spec(5.0), 10000), harmonic_lyapunov(5.0), 1e-6);
    EXPECT_LT(std::abs(tangent_map_lyapunov(harmonic_kick_spec(2.0), 10000)), 1e-3);
    EXPECT_NEAR(tangent_map_lyapunov(cat_map_spec(CatVariant::KickOnly), 10000),
                cat_lyapunov(CatVariant::KickOnly), 1e-6);
    EXPECT_NEAR(tangent_map_lyapunov(cat_map_spec(CatVariant::H2), 10000), cat_lyapunov(CatVariant::H2), 1e-6);
}

TEST(Oracle, JacobianMatchesFiniteDifferences) {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(0.1, 6.0);
    for (int trial = 0; trial < 20; ++trial) {
        const KickedMapSpec spec = standard_map_spec(u(rng) - 3.0, 0.5 + u(rng) / 6.0);
        Eigen::VectorXd x(2);
        x << u(rng), u(rng) - 3.0;
        const Eigen::MatrixXd j = period_jacobian(spec, x);
        EXPECT_LT((j - finite_difference_jacobian(spec, x)).norm(), 1e-7);
        EXPECT_NEAR(j.determinant(), 1.0, 1e-12);
    }
    const KickedMapSpec h = harmonic_kick_spec(3.0);
    EXPECT_LT((period_jacobian(h, h.point) - harmonic_floquet_matrix(3.0)).norm(), 1e-15);
}

TEST(Oracle, Monodromy) {
    Eigen::Matrix2d hyperbolic, elliptic;
    hyperbolic << 1, 1, 1, 2;
    elliptic << 1, 1, -1, 0;
    EXPECT_LT((monodromy_at_fixed_point(standard_map_spec(1.0)) - Eigen::MatrixXd(hyperbolic)).norm(), 1e-15);
    EXPECT_LT((monodromy_at_fixed_point(standard_map_spec(1.0, 1.0, std::numbers::pi)) -
               Eigen::MatrixXd(elliptic)).norm(),
              1e-12);
    EXPECT_THROW(monodromy_at_fixed_point(standard_map_spec(1.0, 1.0, 1.0)), ValidationError);
}

TEST(Oracle, ChaoticExponentIndependentOfTangentVector) {
    const KickedMapSpec spec = standard_map_spec(5.0, 1.0, 1.234, 0.567);
    Eigen::VectorXd a(2), b(2);
    a << 1.0, 0.0;
    b << -0.3, 1.0;
    const double la = tangent_map_lyapunov(spec, 20000, a);
    const double lb = tangent_map_lyapunov(spec, 20000, b);
    EXPECT_GT(la, 0.5);
    EXPECT_NEAR(la, lb, 1e-6);
}

TEST(Oracle, TransientOption) {
    TangentOptions o;
    o.transient = 0;
    EXPECT_NEAR(tangent_map_lyapunov(harmonic_kick_spec(5.0), 1000, Eigen::VectorXd(), o), harmonic_lyapunov(5.0),
                1e-2);
    o.transient = 1000;
    EXPECT_THROW(tangent_map_lyapunov(harmonic_kick_spec(5.0), 1000, Eigen::VectorXd(), o), ValidationError);
}

TEST(Oracle, Errors) {
    EXPECT_THROW(tangent_map_lyapunov(standard_map_spec(1.0), 50), ValidationError);
    EXPECT_THROW(tangent_map_lyapunov(standard_map_spec(1.0), 500, Eigen::VectorXd::Zero(2)), ValidationError);
    EXPECT_THROW(tangent_map_lyapunov(standard_map_spec(1.0), 500, Eigen::VectorXd::Ones(3)), ValidationError);
    EXPECT_THROW(period_map(standard_map_spec(1.0), Eigen::VectorXd::Zero(4)), ValidationError);
    EXPECT_THROW(standard_map_spec(1.0, 0.0), ValidationError);
    EXPECT_EQ(dimension(CatMapFamily{}), 4);
    EXPECT_EQ(dimension(StandardMapFamily{}), 2);
    EXPECT_FALSE(describe(cat_map_spec(CatVariant::H1)).empty());
}
