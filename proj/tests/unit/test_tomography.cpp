#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "tomolyap/errors.hpp"
#include "tomolyap/tomography.hpp"

using namespace tomolyap;

namespace {

double normal_pdf(double x, double mean, double var) {
    return std::exp(-(x - mean) * (x - mean) / (2 * var)) / std::sqrt(2 * std::numbers::pi * var);
}

// Marginal of a bivariate normal along X = mu q + nu p.
double gaussian_marginal(const Gaussian& g, Direction d, double x) {
    const double var = d.mu * d.mu * g.sigma_q * g.sigma_q + d.nu * d.nu * g.sigma_p * g.sigma_p +
                       2 * d.mu * d.nu * g.correlation * g.sigma_q * g.sigma_p;
    return normal_pdf(x, d.mu * g.mean_q + d.nu * g.mean_p, var);
}

Gaussian random_gaussian(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mean(-1.0, 1.0), width(0.5, 2.0), corr(-0.6, 0.6);
    return {mean(rng), mean(rng), width(rng), width(rng), corr(rng)};
}

WaveFunction superpose(const WaveFunction& a, const WaveFunction& b) {
    WaveFunction out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += b.values[i];
    const double n = std::sqrt(out.norm_squared());
    for (auto& v : out.values) v /= n;
    return out;
}

}  // namespace

TEST(Tomography, GaussianTomogramMatchesAnalyticMarginal) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        const Gaussian g = random_gaussian(rng);
        for (const Direction d : {Direction{1, 0}, Direction{0, 1}, Direction{0.6, -0.8}, Direction{2.0, 1.5}}) {
            const GridSpec x = default_x_grid(g, d);
            const Tomogram t = forward_tomogram(g, d, x);
            for (std::size_t i = 0; i < x.points; i += 17)
                EXPECT_NEAR(t.values[i], gaussian_marginal(g, d, x.at(i)), 1e-10);
        }
    }
}

TEST(Tomography, TomogramsAreNormalized) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 10; ++trial) {
        const Gaussian g = random_gaussian(rng);
        const GridSpec x = common_x_grid(g);
        for (const auto& t : tomogram_set(g, x, 48)) EXPECT_NEAR(t.integral(), 1.0, 1e-4);
    }
}

TEST(Tomography, HomogeneityUnderRescaling) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> scale(0.3, 3.0), sign(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const Gaussian g = random_gaussian(rng);
        const Direction d{0.8, 0.6};
        double lambda = scale(rng);
        if (sign(rng) < 0.5) lambda = -lambda;
        const GridSpec x = default_x_grid(g, d);
        const bool flip = lambda < 0;
        const GridSpec scaled = flip ? GridSpec{lambda * x.max, lambda * x.min, x.points}
                                     : GridSpec{lambda * x.min, lambda * x.max, x.points};
        const Tomogram base = forward_tomogram(g, d, x);
        const Tomogram moved = forward_tomogram(g, {lambda * d.mu, lambda * d.nu}, scaled);
        for (std::size_t i = 0; i < x.points; ++i) {
            const std::size_t m = flip ? x.points - 1 - i : i;
            EXPECT_NEAR(moved.values[m], base.values[i] / std::abs(lambda), 1e-8);
        }
    }
}

TEST(Tomography, MixtureTomogramIsWeightedSum) {
    const Gaussian a{-1.0, 0.5, 0.7, 1.1, 0.2};
    const Gaussian b{1.5, -0.5, 1.0, 0.6, -0.3};
    const GaussianMixture m{{{0.3, a}, {0.7, b}}};
    validate_density(m);
    const Direction d{0.6, 0.8};
    const GridSpec x{-8, 8, 201};
    const Tomogram t = forward_tomogram(m, d, x);
    for (std::size_t i = 0; i < x.points; ++i)
        EXPECT_NEAR(t.values[i], 0.3 * gaussian_marginal(a, d, x.at(i)) + 0.7 * gaussian_marginal(b, d, x.at(i)),
                    1e-10);
}

TEST(Tomography, GaussianRoundTrip) {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 3; ++trial) {
        const Gaussian g = random_gaussian(rng);
        const auto tomograms = tomogram_set(g, common_x_grid(g));
        const DensityGrid r = inverse_tomogram(tomograms);
        double worst = 0.0, peak = 0.0;
        for (std::size_t i = 0; i < r.q.points; ++i)
            for (std::size_t j = 0; j < r.p.points; ++j) {
                const double exact = g(r.q.at(i), r.p.at(j));
                peak = std::max(peak, exact);
                worst = std::max(worst, std::abs(r.at(i, j) - exact));
            }
        EXPECT_LT(worst / peak, 1e-2);
        EXPECT_NEAR(r.integral(), 1.0, 1e-3);
    }
}

TEST(Tomography, ReconstructionOfSampledGridDensity) {
    const Gaussian g{0.3, -0.2, 0.8, 1.2, 0.4};
    DensityGrid grid{{-8, 8, 161}, {-8, 8, 161}, {}};
    for (std::size_t i = 0; i < grid.q.points; ++i)
        for (std::size_t j = 0; j < grid.p.points; ++j) grid.values.push_back(g(grid.q.at(i), grid.p.at(j)));
    const double mass = grid.integral();
    for (auto& v : grid.values) v /= mass;
    validate_density(grid);
    const Direction d{0.6, 0.8};
    const GridSpec x{-6, 6, 121};
    const Tomogram t = forward_tomogram(grid, d, x);
    for (std::size_t i = 0; i < x.points; i += 10) EXPECT_NEAR(t.values[i], gaussian_marginal(g, d, x.at(i)), 2e-3);
}

TEST(Tomography, PureStateTomogramMatchesWignerPath) {
    for (const double hbar : {1.0, 0.5}) {
        const double q0 = 0.7, p0 = -0.4;
        const GridSpec y{-14, 14, 4096};
        const WaveFunction psi = coherent_state(q0, p0, y, hbar);
        const Gaussian w = coherent_state_wigner(q0, p0, hbar);
        for (const Direction d : {Direction{0.6, 0.8}, Direction{-0.3, 1.0}, Direction{1.0, 0.2}}) {
            const GridSpec x = default_x_grid(w, d);
            const Tomogram a = pure_state_tomogram(psi, d, x);
            const Tomogram b = forward_tomogram(w, d, x);
            for (std::size_t i = 0; i < x.points; ++i) EXPECT_NEAR(a.values[i], b.values[i], 1e-6);
        }
    }
}

TEST(Tomography, CoherentWignerWidths) {
    const Gaussian w = coherent_state_wigner(0, 0, 0.5, 2.0);
    EXPECT_NEAR(w.sigma_q, 2.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(w.sigma_p, 0.5 / (2.0 * std::sqrt(2.0)), 1e-15);
    EXPECT_NEAR(w.sigma_q * w.sigma_p, 0.25, 1e-15);
}

TEST(Tomography, PositionTomogramAtNuZero) {
    const GridSpec y{-10, 10, 2001};
    const WaveFunction psi = coherent_state(0.5, 0.0, y, 1.0);
    EXPECT_THROW(pure_state_tomogram(psi, {1.0, 0.0}, y), UnsupportedDirectionError);
    const Tomogram t = position_tomogram(psi, 2.0, GridSpec{-10, 10, 401});
    const Gaussian w = coherent_state_wigner(0.5, 0.0, 1.0);
    for (std::size_t i = 0; i < t.x.points; i += 20)
        EXPECT_NEAR(t.values[i], gaussian_marginal(w, {2.0, 0.0}, t.x.at(i)), 1e-9);
    EXPECT_THROW(position_tomogram(psi, 0.0, y), InvalidDirectionError);
}

TEST(Tomography, MeanPosition) {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        const Gaussian g = random_gaussian(rng);
        const Tomogram t = forward_tomogram(g, {1.0, 0.0}, default_x_grid(g, {1.0, 0.0}));
        EXPECT_NEAR(tomogram_mean_position(t), g.mean_q, 1e-6);
    }
    const Gaussian g{0.2, 0.1, 1, 1, 0};
    EXPECT_THROW(tomogram_mean_position(forward_tomogram(g, {0.0, 1.0}, GridSpec{-5, 5, 11})),
                 InvalidDirectionError);
}

TEST(Tomography, WignerOfCoherentStateFromTomograms) {
    const double hbar = 1.0;
    const Gaussian w = coherent_state_wigner(0.5, -0.5, hbar);
    const GridSpec x = common_x_grid(w);
    const WaveFunction psi = coherent_state(0.5, -0.5, GridSpec{-12, 12, 2048}, hbar);
    const WignerGrid r = wigner_from_tomogram(pure_state_tomogram_set(psi, x));
    EXPECT_NEAR(r.integral(), 1.0, 1e-3);
    double worst = 0.0;
    for (std::size_t i = 0; i < r.q.points; ++i)
        for (std::size_t j = 0; j < r.p.points; ++j) worst = std::max(worst, std::abs(r.at(i, j) - w(r.q.at(i), r.p.at(j))));
    EXPECT_LT(worst / w(0.5, -0.5), 1e-2);
}

TEST(Tomography, CatStateWignerGoesNegative) {
    const GridSpec y{-14, 14, 4096};
    const WaveFunction psi = superpose(coherent_state(-2.5, 0, y), coherent_state(2.5, 0, y));
    const WignerGrid r = wigner_from_tomogram(pure_state_tomogram_set(psi, GridSpec{-9, 9, 256}, 96));
    double lowest = 0.0;
    for (double v : r.values) lowest = std::min(lowest, v);
    EXPECT_LT(lowest, -0.05);
    EXPECT_NEAR(r.integral(), 1.0, 1e-2);
}

TEST(Tomography, Errors) {
    const Gaussian g{};
    EXPECT_THROW(forward_tomogram(g, {0.0, 0.0}, GridSpec{-1, 1, 11}), InvalidDirectionError);
    EXPECT_THROW(forward_tomogram(g, {1.0, 0.0}, GridSpec{-1, 1, 1}), ValidationError);
    EXPECT_THROW(validate_density(Gaussian{0, 0, -1, 1, 0}), ValidationError);
    EXPECT_THROW(validate_density(GaussianMixture{{{0.5, g}}}), ValidationError);
    const auto few = tomogram_set(g, common_x_grid(g), 8);
    EXPECT_THROW(inverse_tomogram(few), InsufficientDataError);
    EXPECT_THROW(inverse_tomogram(std::span<const Tomogram>{}), InsufficientDataError);
    EXPECT_THROW(coherent_state(0, 0, GridSpec{-5, 5, 101}, 0.0), ValidationError);
}

TEST(Tomography, UnitCircleDirections) {
    const auto dirs = unit_circle_directions(64);
    ASSERT_EQ(dirs.size(), 64u);
    for (const auto& d : dirs) EXPECT_NEAR(std::hypot(d.mu, d.nu), 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(dirs[0].mu, 1.0);
    EXPECT_NEAR(dirs[32].mu, 0.0, 1e-15);
}
