#include <cmath>

#include <gtest/gtest.h>

#include "tomolyap/errors.hpp"
#include "tomolyap/symbolic_expansion.hpp"

using namespace tomolyap;

TEST(Symbolic, TransportMatrices) {
    Eigen::Matrix3d m0, mp, mm;
    m0 << 1, 1, 0, 0, 1, 0, 0, 0, 1;
    mp << 1, 1, 0, 0, 1, 0, 1, 1, 1;
    mm << 1, 1, 0, 0, 1, 0, -1, -1, 1;
    EXPECT_EQ(symbolic_m0(), m0);
    EXPECT_EQ(symbolic_m_plus(), mp);
    EXPECT_EQ(symbolic_m_minus(), mm);
    EXPECT_EQ(symbolic_x0(2.0, 3.0), Eigen::Vector3d(2, 3, 0));
    EXPECT_EQ(symbolic_y0(), Eigen::Vector3d(0, 1, 0));
    EXPECT_EQ(symbolic_trace(Eigen::Vector3d(1, 2, 3)), 6.0);
}

TEST(Symbolic, TermCounts) {
    EXPECT_EQ(expand_terms(0, 1.0).terms.size(), 1u);
    EXPECT_EQ(expand_terms(1, 1.0).terms.size(), 3u);
    EXPECT_EQ(expand_terms(5, 1.0).terms.size(), 243u);
    for (const auto& t : expand_terms(4, 3.0).terms)
        EXPECT_DOUBLE_EQ(std::abs(t.coefficient), std::pow(1.5, static_cast<double>(t.f_arguments.size())));
}

TEST(Symbolic, SingleStepByHand) {
    // G(1, 1, 1, 1) = G0(1, 2) + (gamma / 2) f(1) (G0(2, 3) - G0(0, 1)) with G0 = mu + nu.
    StandardMapParams p;
    p.gamma = 0.8;
    EXPECT_NEAR(symbolic_expand(p, 1).real(), 3.0 + 0.4 * (5.0 - 1.0), 1e-15);
    p.hbar = 1.0;
    EXPECT_NEAR(symbolic_expand(p, 1).real(), 3.0 + 0.4 * 2.0 * std::sin(0.5) * 4.0, 1e-15);
}

TEST(Symbolic, AgreesWithLattice) {
    for (double hbar : {0.0, 1.0}) {
        for (double gamma : {0.5, 1.0, 2.0}) {
            StandardMapParams p;
            p.gamma = gamma;
            p.hbar = hbar;
            GField field = init_gfield(p, 8);
            for (int n = 0; n <= 8; ++n) {
                const std::complex<double> lattice = field.at(1, 1);
                const std::complex<double> symbolic = symbolic_expand(p, n);
                EXPECT_LE(std::abs(symbolic - lattice), 1e-12 * std::max(1.0, std::abs(lattice)))
                    << "gamma=" << gamma << " hbar=" << hbar << " n=" << n;
                if (n < 8) field.advance();
            }
        }
    }
}

TEST(Symbolic, WeightsFollowInitialData) {
    StandardMapParams p;
    p.gamma = 1.0;
    p.v1 = 2.0;
    p.v2 = -0.5;
    GField field = init_gfield(p, 4);
    for (int i = 0; i < 4; ++i) field.advance();
    EXPECT_NEAR(symbolic_expand(p, 4).real(), field.at(1, 1).real(), 1e-12 * std::abs(field.at(1, 1)));
    const SymbolicTermSet set = expand_terms(4, 1.0, 2.0, -0.5);
    EXPECT_NEAR(evaluate_terms(set, p).real(), field.at(1, 1).real(), 1e-12 * std::abs(field.at(1, 1)));
}

TEST(Symbolic, Limits) {
    StandardMapParams p;
    EXPECT_THROW(symbolic_expand(p, 13), ResourceError);
    EXPECT_THROW(expand_terms(5, 1.0, 1.0, 1.0, 4), ResourceError);
    p.tau = 0.5;
    EXPECT_THROW(symbolic_expand(p, 2), ValidationError);
    p.tau = 1.0;
    p.q0 = 1.0;
    EXPECT_THROW(symbolic_expand(p, 2), ValidationError);
    EXPECT_THROW(expand_terms(-1, 1.0), ValidationError);
}
