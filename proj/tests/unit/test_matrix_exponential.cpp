#include <cmath>
#include <limits>
#include <random>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "tomolyap/errors.hpp"
#include "tomolyap/matrix_exponential.hpp"

using namespace tomolyap;

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;
using BigMatrix = Eigen::Matrix<Big, Eigen::Dynamic, Eigen::Dynamic>;

// Taylor series with scaling and squaring in 50-digit arithmetic.
Eigen::MatrixXd reference_exp(const Eigen::MatrixXd& a) {
    BigMatrix x = a.cast<Big>();
    int squarings = 0;
    while (a.cwiseAbs().rowwise().sum().maxCoeff() / std::ldexp(1.0, squarings) > 0.1) ++squarings;
    x /= Big(std::ldexp(1.0, squarings));
    BigMatrix sum = BigMatrix::Identity(a.rows(), a.cols());
    BigMatrix term = sum;
    for (int k = 1; k < 60; ++k) {
        term = (term * x) / Big(k);
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    Eigen::MatrixXd out(a.rows(), a.cols());
    for (Eigen::Index i = 0; i < a.size(); ++i) out(i) = static_cast<double>(sum(i));
    return out;
}

}  // namespace

TEST(MatrixExponential, MatchesExtendedPrecisionReference) {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int dim : {2, 4}) {
        for (int trial = 0; trial < 20; ++trial) {
            Eigen::MatrixXd a(dim, dim);
            const double scale = std::pow(10.0, trial % 3 - 1);
            for (int i = 0; i < a.size(); ++i) a(i) = scale * n(rng);
            const Eigen::MatrixXd ref = reference_exp(a);
            EXPECT_LT((matrix_exponential(a) - ref).norm() / ref.norm(), 1e-13) << a;
        }
    }
}

TEST(MatrixExponential, MatchesEigenReference) {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int dim : {2, 3, 4}) {
        for (int trial = 0; trial < 30; ++trial) {
            Eigen::MatrixXd a(dim, dim);
            const double scale = std::pow(10.0, trial % 4 - 1);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) a(i, j) = scale * n(rng);
            const Eigen::MatrixXd ref = a.exp();
            const Eigen::MatrixXd got = matrix_exponential(a);
            EXPECT_LT((got - ref).norm() / ref.norm(), 1e-11) << a;
        }
    }
}

TEST(MatrixExponential, ClosedForms) {
    EXPECT_NEAR((matrix_exponential(Eigen::MatrixXd::Zero(4, 4)) - Eigen::MatrixXd::Identity(4, 4)).norm(), 0.0, 1e-15);

    Eigen::MatrixXd nilpotent(2, 2);
    nilpotent << 0, 3, 0, 0;
    Eigen::MatrixXd shear(2, 2);
    shear << 1, 3, 0, 1;
    EXPECT_LT((matrix_exponential(nilpotent) - shear).norm(), 1e-15);

    const double t = 1.3;
    Eigen::MatrixXd rot(2, 2);
    rot << 0, t, -t, 0;
    Eigen::MatrixXd expected(2, 2);
    expected << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
    EXPECT_LT((matrix_exponential(rot) - expected).norm(), 1e-14);

    Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(3, 3);
    diag.diagonal() << -2.0, 0.5, 4.0;
    const Eigen::MatrixXd e = matrix_exponential(diag);
    EXPECT_NEAR(e(2, 2) / std::exp(4.0), 1.0, 1e-14);
    EXPECT_NEAR(e(0, 0) / std::exp(-2.0), 1.0, 1e-14);
}

TEST(MatrixExponential, InverseAndDeterminant) {
    std::mt19937_64 rng(29);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::MatrixXd a(4, 4);
        for (int i = 0; i < 16; ++i) a(i) = n(rng);
        const Eigen::MatrixXd p = matrix_exponential(a) * matrix_exponential(-a);
        EXPECT_LT((p - Eigen::MatrixXd::Identity(4, 4)).norm(), 1e-12);
        EXPECT_NEAR(matrix_exponential(a).determinant() / std::exp(a.trace()), 1.0, 1e-12);
    }
}

TEST(MatrixExponential, RejectsBadInput) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
    a(0, 1) = std::numeric_limits<double>::quiet_NaN();
    EXPECT_THROW(matrix_exponential(a), NumericalError);
    EXPECT_THROW(matrix_exponential(Eigen::MatrixXd::Zero(2, 3)), ValidationError);
}

TEST(SpectralRadius, KnownMatrices) {
    Eigen::MatrixXd cat(2, 2);
    cat << 1, 1, 1, 2;
    EXPECT_NEAR(spectral_radius(cat), (3 + std::sqrt(5.0)) / 2, 1e-14);
    Eigen::MatrixXd rot(2, 2);
    rot << 0, -1, 1, 0;
    EXPECT_NEAR(spectral_radius(rot), 1.0, 1e-15);
}
