#pragma once

// Symplectic tomography for one degree of freedom.
//
// A tomogram w(X, mu, nu) is the probability density of the observable
// X = mu*q + nu*p.  Classical densities and quantum Wigner functions map to
// tomograms by the same line-integral transform; the inverse is a filtered
// back projection over directions on the unit circle.
//
// Normalization convention: both the classical inverse and the Wigner
// reconstruction use the prefactor 1/(4 pi^2) that makes the reconstructed
// function integrate to one over (q, p).

#include <complex>
#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace tomolyap {

/// Uniform 1-D sampling [min, max] with `points` nodes (endpoints included).
struct GridSpec {
    double min = -1.0;
    double max = 1.0;
    std::size_t points = 2;

    double step() const { return (max - min) / static_cast<double>(points - 1); }
    double at(std::size_t i) const { return min + step() * static_cast<double>(i); }
    bool operator==(const GridSpec&) const = default;
};

void validate_grid(const GridSpec& grid, const char* what);

/// Observable direction (mu, nu).
struct Direction {
    double mu = 1.0;
    double nu = 0.0;
    bool operator==(const Direction&) const = default;
};

/// Bivariate normal density in (q, p).
struct Gaussian {
    double mean_q = 0.0;
    double mean_p = 0.0;
    double sigma_q = 1.0;
    double sigma_p = 1.0;
    double correlation = 0.0;

    double operator()(double q, double p) const;
};

struct GaussianMixture {
    struct Component {
        double weight;
        Gaussian gaussian;
    };
    std::vector<Component> components;

    double operator()(double q, double p) const;
};

/// Density sampled on a (q, p) grid; `values[iq * p.points + ip]`.
struct DensityGrid {
    GridSpec q;
    GridSpec p;
    std::vector<double> values;

    double at(std::size_t iq, std::size_t ip) const { return values[iq * p.points + ip]; }
    /// Bilinear interpolation, zero outside the grid.
    double interpolate(double qv, double pv) const;
    double integral() const;
};

using PhaseSpaceDensity = std::variant<Gaussian, GaussianMixture, DensityGrid>;

struct Tomogram {
    GridSpec x;
    Direction direction;
    std::vector<double> values;

    double integral() const;
};

struct WaveFunction {
    GridSpec y;
    std::vector<std::complex<double>> values;
    double hbar = 1.0;

    double norm_squared() const;
};

/// Quasi-probability on a (q, p) grid; may be negative.
struct WignerGrid {
    GridSpec q;
    GridSpec p;
    std::vector<double> values;

    double at(std::size_t iq, std::size_t ip) const { return values[iq * p.points + ip]; }
    double integral() const;
};

struct TomographyDefaults {
    static constexpr std::size_t kXPoints = 256;
    static constexpr double kHalfWidthSigmas = 8.0;
    static constexpr std::size_t kDirections = 64;
    static constexpr std::size_t kMinDirections = 32;
    static constexpr std::size_t kReconstructionPoints = 128;
};

/// Throws ValidationError unless the density is nonnegative with unit mass (1e-6).
void validate_density(const PhaseSpaceDensity& density);

/// Mean and standard deviation of X = mu q + nu p under the density.
struct Moments1D {
    double mean;
    double stddev;
};
Moments1D observable_moments(const PhaseSpaceDensity& density, Direction direction);

/// 256 points over mean +- 8 standard deviations of X.
GridSpec default_x_grid(const PhaseSpaceDensity& density, Direction direction);

/// w(X, mu, nu) = integral of rho along the line mu q + nu p = X.
Tomogram forward_tomogram(const PhaseSpaceDensity& density, Direction direction,
                          const GridSpec& x_grid);

/// `count` directions (cos theta, sin theta), theta = (i + offset) pi / count.
std::vector<Direction> unit_circle_directions(std::size_t count = TomographyDefaults::kDirections,
                                              double offset = 0.0);

/// Common X grid wide enough for every unit direction of the density.
GridSpec common_x_grid(const PhaseSpaceDensity& density,
                       std::size_t points = TomographyDefaults::kXPoints);

std::vector<Tomogram> tomogram_set(const PhaseSpaceDensity& density, const GridSpec& x_grid,
                                   std::size_t directions = TomographyDefaults::kDirections);

/// Filtered back projection. Negative ringing is clipped to zero; the mass is
/// not rescaled.
DensityGrid inverse_tomogram(std::span<const Tomogram> tomograms, const GridSpec& q_grid,
                             const GridSpec& p_grid);
DensityGrid inverse_tomogram(std::span<const Tomogram> tomograms);

/// Same pipeline as inverse_tomogram without clipping.
WignerGrid wigner_from_tomogram(std::span<const Tomogram> tomograms, const GridSpec& q_grid,
                                const GridSpec& p_grid);
WignerGrid wigner_from_tomogram(std::span<const Tomogram> tomograms);

/// Tomogram of a pure state; requires nu != 0.
Tomogram pure_state_tomogram(const WaveFunction& psi, Direction direction, const GridSpec& x_grid);

/// nu = 0 limit: w(X, mu, 0) = |psi(X / mu)|^2 / |mu|.
Tomogram position_tomogram(const WaveFunction& psi, double mu, const GridSpec& x_grid);

/// Quantum tomograms over unit directions, using position_tomogram where nu = 0.
std::vector<Tomogram> pure_state_tomogram_set(const WaveFunction& psi, const GridSpec& x_grid,
                                              std::size_t directions = TomographyDefaults::kDirections);

/// Normalized Gaussian wave packet centred at (q0, p0); |psi|^2 has
/// position variance spread^2 / 2.
WaveFunction coherent_state(double q0, double p0, const GridSpec& y_grid, double hbar = 1.0,
                            double spread = 1.0);

/// Wigner function of coherent_state(q0, p0, ., hbar, spread).
Gaussian coherent_state_wigner(double q0, double p0, double hbar = 1.0, double spread = 1.0);

/// <q> = integral w(X, 1, 0) X dX; the tomogram must have direction exactly (1, 0).
double tomogram_mean_position(const Tomogram& tomogram);

}  // namespace tomolyap
