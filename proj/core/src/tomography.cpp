#include "tomolyap/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "tomolyap/errors.hpp"

namespace tomolyap {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDensityTolerance = 1e-6;

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double direction_norm(Direction d) { return std::hypot(d.mu, d.nu); }

void require_direction(Direction d) {
    if (!std::isfinite(d.mu) || !std::isfinite(d.nu) || (d.mu == 0.0 && d.nu == 0.0)) {
        throw InvalidDirectionError("tomographic direction must be a finite nonzero vector");
    }
}

void validate_gaussian(const Gaussian& g) {
    if (!(g.sigma_q > 0.0) || !(g.sigma_p > 0.0) || !std::isfinite(g.sigma_q) ||
        !std::isfinite(g.sigma_p)) {
        throw ValidationError("gaussian widths must be positive and finite");
    }
    if (!(std::abs(g.correlation) < 1.0)) {
        throw ValidationError("gaussian correlation must lie in (-1, 1)");
    }
    if (!std::isfinite(g.mean_q) || !std::isfinite(g.mean_p)) {
        throw ValidationError("gaussian mean must be finite");
    }
}

Moments1D gaussian_moments(const Gaussian& g, Direction d) {
    const double mean = d.mu * g.mean_q + d.nu * g.mean_p;
    const double var = d.mu * d.mu * g.sigma_q * g.sigma_q + d.nu * d.nu * g.sigma_p * g.sigma_p +
                       2.0 * d.mu * d.nu * g.correlation * g.sigma_q * g.sigma_p;
    return {mean, std::sqrt(std::max(var, 0.0))};
}

// Integral of a single Gaussian along the line mu q + nu p = X, divided by |(mu, nu)|.
// The integrand is a 1-D Gaussian in arc length; the trapezoid rule with a step of
// a sixth of its width is exact to rounding.
double gaussian_line_integral(const Gaussian& g, Direction d, double x) {
    const double m = direction_norm(d);
    const double base_q = x * d.mu / (m * m);
    const double base_p = x * d.nu / (m * m);
    const double tq = -d.nu / m;
    const double tp = d.mu / m;

    // Width of the integrand along the tangent: 1 / sqrt(t^T C^-1 t).
    const double r = g.correlation;
    const double det = g.sigma_q * g.sigma_q * g.sigma_p * g.sigma_p * (1.0 - r * r);
    const double inv_qq = g.sigma_p * g.sigma_p / det;
    const double inv_pp = g.sigma_q * g.sigma_q / det;
    const double inv_qp = -r * g.sigma_q * g.sigma_p / det;
    const double curvature = tq * tq * inv_qq + 2.0 * tq * tp * inv_qp + tp * tp * inv_pp;
    const double width = 1.0 / std::sqrt(curvature);

    // Stationary point of the exponent along the line.
    const double dq0 = base_q - g.mean_q;
    const double dp0 = base_p - g.mean_p;
    const double slope = tq * (inv_qq * dq0 + inv_qp * dp0) + tp * (inv_qp * dq0 + inv_pp * dp0);
    const double s_center = -slope / curvature;

    const double h = width / 6.0;
    const int half = 6 * 13;  // +- 13 widths
    double sum = 0.0;
    for (int i = -half; i <= half; ++i) {
        const double s = s_center + h * i;
        sum += g(base_q + s * tq, base_p + s * tp);
    }
    return sum * h / m;
}

double grid_line_integral(const DensityGrid& grid, Direction d, double x) {
    const double m = direction_norm(d);
    const double base_q = x * d.mu / (m * m);
    const double base_p = x * d.nu / (m * m);
    const double tq = -d.nu / m;
    const double tp = d.mu / m;

    // Slab clipping of the line against the grid rectangle.
    double s_lo = -std::numeric_limits<double>::infinity();
    double s_hi = std::numeric_limits<double>::infinity();
    auto clip = [&](double base, double t, double lo, double hi) {
        if (t == 0.0) {
            if (base < lo || base > hi) {
                s_lo = 1.0;
                s_hi = 0.0;
            }
            return;
        }
        double a = (lo - base) / t;
        double b = (hi - base) / t;
        if (a > b) std::swap(a, b);
        s_lo = std::max(s_lo, a);
        s_hi = std::min(s_hi, b);
    };
    clip(base_q, tq, grid.q.min, grid.q.max);
    clip(base_p, tp, grid.p.min, grid.p.max);
    if (!(s_hi > s_lo)) return 0.0;

    const double h0 = 0.5 * std::min(grid.q.step(), grid.p.step());
    const auto n = static_cast<std::size_t>(std::ceil((s_hi - s_lo) / h0));
    if (n == 0) return 0.0;
    const double h = (s_hi - s_lo) / static_cast<double>(n);
    double sum = 0.0;
    for (std::size_t i = 0; i <= n; ++i) {
        const double s = s_lo + h * static_cast<double>(i);
        const double wgt = (i == 0 || i == n) ? 0.5 : 1.0;
        sum += wgt * grid.interpolate(base_q + s * tq, base_p + s * tp);
    }
    return sum * h / m;
}

double line_integral(const PhaseSpaceDensity& density, Direction d, double x) {
    return std::visit(
        Overloaded{
            [&](const Gaussian& g) { return gaussian_line_integral(g, d, x); },
            [&](const GaussianMixture& mix) {
                double s = 0.0;
                for (const auto& c : mix.components) {
                    s += c.weight * gaussian_line_integral(c.gaussian, d, x);
                }
                return s;
            },
            [&](const DensityGrid& grid) { return grid_line_integral(grid, d, x); }},
        density);
}

double riemann_2d(const std::vector<double>& values, const GridSpec& q, const GridSpec& p) {
    double s = 0.0;
    for (double v : values) s += v;
    return s * q.step() * p.step();
}

// Ram-Lak kernel: integral of |r| e^{i r t} dr band-limited to |r| < pi / dx,
// sampled at t = n dx.
std::vector<double> ramp_kernel(std::size_t n, double dx) {
    std::vector<double> h(2 * n - 1, 0.0);
    const std::size_t c = n - 1;
    h[c] = kPi * kPi / (dx * dx);
    for (std::size_t k = 1; k < n; k += 2) {
        const double v = -4.0 / (static_cast<double>(k * k) * dx * dx);
        h[c + k] = v;
        h[c - k] = v;
    }
    return h;
}

struct ProjectionSet {
    GridSpec x;
    std::vector<double> cos_theta;
    std::vector<double> sin_theta;
    std::vector<std::vector<double>> filtered;
};

ProjectionSet filter_projections(std::span<const Tomogram> tomograms) {
    const std::size_t count = tomograms.size();
    if (count < TomographyDefaults::kMinDirections) {
        throw InsufficientDataError("reconstruction needs at least " +
                                    std::to_string(TomographyDefaults::kMinDirections) +
                                    " directions, got " + std::to_string(count));
    }
    const GridSpec& x = tomograms.front().x;
    validate_grid(x, "tomogram X grid");

    std::vector<std::pair<double, std::size_t>> angles;
    angles.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const Tomogram& t = tomograms[i];
        if (!(t.x == x)) throw ValidationError("tomograms must share a common X grid");
        if (t.values.size() != x.points) throw ValidationError("tomogram size does not match grid");
        require_direction(t.direction);
        if (std::abs(direction_norm(t.direction) - 1.0) > 1e-9) {
            throw ValidationError("reconstruction expects unit directions (cos theta, sin theta)");
        }
        double theta = std::atan2(t.direction.nu, t.direction.mu);
        if (theta < 0.0) theta += kPi;
        if (theta >= kPi - 1e-12) theta -= kPi;
        angles.emplace_back(theta, i);
    }
    std::sort(angles.begin(), angles.end());
    const double spacing = kPi / static_cast<double>(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double next = (i + 1 < count) ? angles[i + 1].first : angles[0].first + kPi;
        if (std::abs(next - angles[i].first - spacing) > 1e-9) {
            throw ValidationError("directions must be equally spaced over [0, pi)");
        }
    }

    const std::size_t n = x.points;
    const double dx = x.step();
    const auto kernel = ramp_kernel(n, dx);

    ProjectionSet out;
    out.x = x;
    for (const auto& [theta, idx] : angles) {
        const auto& w = tomograms[idx].values;
        std::vector<double> f(n, 0.0);
        for (std::size_t m = 0; m < n; ++m) {
            double acc = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                acc += w[j] * kernel[m + (n - 1) - j];
            }
            f[m] = acc * dx;
        }
        out.cos_theta.push_back(tomograms[idx].direction.mu);
        out.sin_theta.push_back(tomograms[idx].direction.nu);
        out.filtered.push_back(std::move(f));
    }
    return out;
}

std::vector<double> back_project(const ProjectionSet& set, const GridSpec& q, const GridSpec& p) {
    validate_grid(q, "q grid");
    validate_grid(p, "p grid");
    std::vector<double> out(q.points * p.points, 0.0);
    const double dx = set.x.step();
    const double x0 = set.x.min;
    const auto last = static_cast<double>(set.x.points - 1);
    // (1 / 4 pi^2) * (pi / N) angular quadrature weight.
    const double weight = 1.0 / (4.0 * kPi * static_cast<double>(set.filtered.size()));

    for (std::size_t a = 0; a < set.filtered.size(); ++a) {
        const auto& f = set.filtered[a];
        const double c = set.cos_theta[a];
        const double s = set.sin_theta[a];
        for (std::size_t iq = 0; iq < q.points; ++iq) {
            const double qv = q.at(iq);
            for (std::size_t ip = 0; ip < p.points; ++ip) {
                const double u = (qv * c + p.at(ip) * s - x0) / dx;
                if (u < 0.0 || u > last) continue;
                const auto k = std::min(static_cast<std::size_t>(u), set.x.points - 2);
                const double t = u - static_cast<double>(k);
                out[iq * p.points + ip] += (1.0 - t) * f[k] + t * f[k + 1];
            }
        }
    }
    for (double& v : out) v *= weight;
    return out;
}

std::pair<GridSpec, GridSpec> default_phase_grids(const GridSpec& x) {
    const double half = std::max(std::abs(x.min), std::abs(x.max)) / std::numbers::sqrt2;
    const GridSpec g{-half, half, TomographyDefaults::kReconstructionPoints};
    return {g, g};
}

}  // namespace

void validate_grid(const GridSpec& grid, const char* what) {
    if (grid.points < 2 || !(grid.max > grid.min) || !std::isfinite(grid.min) ||
        !std::isfinite(grid.max)) {
        throw ValidationError(std::string(what) + ": need at least 2 points over a finite interval");
    }
}

double Gaussian::operator()(double q, double p) const {
    const double r = correlation;
    const double one_m_r2 = 1.0 - r * r;
    const double zq = (q - mean_q) / sigma_q;
    const double zp = (p - mean_p) / sigma_p;
    const double expo = -(zq * zq - 2.0 * r * zq * zp + zp * zp) / (2.0 * one_m_r2);
    return std::exp(expo) / (2.0 * kPi * sigma_q * sigma_p * std::sqrt(one_m_r2));
}

double GaussianMixture::operator()(double q, double p) const {
    double s = 0.0;
    for (const auto& c : components) s += c.weight * c.gaussian(q, p);
    return s;
}

double DensityGrid::interpolate(double qv, double pv) const {
    const double u = (qv - q.min) / q.step();
    const double v = (pv - p.min) / p.step();
    const auto uq = static_cast<double>(q.points - 1);
    const auto vp = static_cast<double>(p.points - 1);
    if (u < 0.0 || v < 0.0 || u > uq || v > vp) return 0.0;
    const auto i = std::min(static_cast<std::size_t>(u), q.points - 2);
    const auto j = std::min(static_cast<std::size_t>(v), p.points - 2);
    const double a = u - static_cast<double>(i);
    const double b = v - static_cast<double>(j);
    return (1 - a) * (1 - b) * at(i, j) + a * (1 - b) * at(i + 1, j) + (1 - a) * b * at(i, j + 1) +
           a * b * at(i + 1, j + 1);
}

double DensityGrid::integral() const { return riemann_2d(values, q, p); }

double WignerGrid::integral() const { return riemann_2d(values, q, p); }

double Tomogram::integral() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * x.step();
}

double WaveFunction::norm_squared() const {
    double s = 0.0;
    for (const auto& v : values) s += std::norm(v);
    return s * y.step();
}

void validate_density(const PhaseSpaceDensity& density) {
    std::visit(Overloaded{[](const Gaussian& g) { validate_gaussian(g); },
                          [](const GaussianMixture& mix) {
                              if (mix.components.empty()) {
                                  throw ValidationError("gaussian mixture has no components");
                              }
                              double total = 0.0;
                              for (const auto& c : mix.components) {
                                  if (!(c.weight >= 0.0)) {
                                      throw ValidationError("mixture weights must be nonnegative");
                                  }
                                  validate_gaussian(c.gaussian);
                                  total += c.weight;
                              }
                              if (std::abs(total - 1.0) > kDensityTolerance) {
                                  throw ValidationError("mixture weights must sum to 1");
                              }
                          },
                          [](const DensityGrid& grid) {
                              validate_grid(grid.q, "density q grid");
                              validate_grid(grid.p, "density p grid");
                              if (grid.values.size() != grid.q.points * grid.p.points) {
                                  throw ValidationError("density grid size mismatch");
                              }
                              for (double v : grid.values) {
                                  if (!(v >= 0.0)) throw ValidationError("density must be nonnegative");
                              }
                              if (std::abs(grid.integral() - 1.0) > kDensityTolerance) {
                                  throw ValidationError("density grid is not normalized (mass " +
                                                        std::to_string(grid.integral()) + ")");
                              }
                          }},
               density);
}

Moments1D observable_moments(const PhaseSpaceDensity& density, Direction d) {
    return std::visit(
        Overloaded{[&](const Gaussian& g) { return gaussian_moments(g, d); },
                   [&](const GaussianMixture& mix) {
                       double mean = 0.0;
                       double second = 0.0;
                       for (const auto& c : mix.components) {
                           const auto m = gaussian_moments(c.gaussian, d);
                           mean += c.weight * m.mean;
                           second += c.weight * (m.stddev * m.stddev + m.mean * m.mean);
                       }
                       return Moments1D{mean, std::sqrt(std::max(second - mean * mean, 0.0))};
                   },
                   [&](const DensityGrid& grid) {
                       double mass = 0.0;
                       double first = 0.0;
                       double second = 0.0;
                       for (std::size_t i = 0; i < grid.q.points; ++i) {
                           for (std::size_t j = 0; j < grid.p.points; ++j) {
                               const double x = d.mu * grid.q.at(i) + d.nu * grid.p.at(j);
                               const double v = grid.at(i, j);
                               mass += v;
                               first += v * x;
                               second += v * x * x;
                           }
                       }
                       if (!(mass > 0.0)) throw ValidationError("density grid has zero mass");
                       const double mean = first / mass;
                       return Moments1D{mean, std::sqrt(std::max(second / mass - mean * mean, 0.0))};
                   }},
        density);
}

GridSpec default_x_grid(const PhaseSpaceDensity& density, Direction direction) {
    require_direction(direction);
    const auto m = observable_moments(density, direction);
    if (!(m.stddev > 0.0)) throw ValidationError("observable has zero spread; give an explicit grid");
    const double half = TomographyDefaults::kHalfWidthSigmas * m.stddev;
    return {m.mean - half, m.mean + half, TomographyDefaults::kXPoints};
}

Tomogram forward_tomogram(const PhaseSpaceDensity& density, Direction direction,
                          const GridSpec& x_grid) {
    require_direction(direction);
    validate_grid(x_grid, "X grid");
    validate_density(density);
    Tomogram out{x_grid, direction, std::vector<double>(x_grid.points)};
    for (std::size_t i = 0; i < x_grid.points; ++i) {
        out.values[i] = line_integral(density, direction, x_grid.at(i));
    }
    return out;
}

std::vector<Direction> unit_circle_directions(std::size_t count, double offset) {
    std::vector<Direction> dirs;
    dirs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double theta = (static_cast<double>(i) + offset) * kPi / static_cast<double>(count);
        // Exact axis directions keep the nu = 0 case recognisable downstream.
        if (theta == 0.0) {
            dirs.push_back({1.0, 0.0});
        } else {
            dirs.push_back({std::cos(theta), std::sin(theta)});
        }
    }
    return dirs;
}

GridSpec common_x_grid(const PhaseSpaceDensity& density, std::size_t points) {
    double half = 0.0;
    for (const auto& d : unit_circle_directions(180)) {
        const auto m = observable_moments(density, d);
        half = std::max(half, std::abs(m.mean) + TomographyDefaults::kHalfWidthSigmas * m.stddev);
    }
    if (!(half > 0.0)) throw ValidationError("density has zero spread");
    return {-half, half, points};
}

std::vector<Tomogram> tomogram_set(const PhaseSpaceDensity& density, const GridSpec& x_grid,
                                   std::size_t directions) {
    std::vector<Tomogram> out;
    out.reserve(directions);
    for (const auto& d : unit_circle_directions(directions)) {
        out.push_back(forward_tomogram(density, d, x_grid));
    }
    return out;
}

DensityGrid inverse_tomogram(std::span<const Tomogram> tomograms, const GridSpec& q_grid,
                             const GridSpec& p_grid) {
    const auto set = filter_projections(tomograms);
    auto values = back_project(set, q_grid, p_grid);
    for (double& v : values) v = std::max(v, 0.0);
    return {q_grid, p_grid, std::move(values)};
}

DensityGrid inverse_tomogram(std::span<const Tomogram> tomograms) {
    if (tomograms.empty()) throw InsufficientDataError("no tomograms supplied");
    const auto [q, p] = default_phase_grids(tomograms.front().x);
    return inverse_tomogram(tomograms, q, p);
}

WignerGrid wigner_from_tomogram(std::span<const Tomogram> tomograms, const GridSpec& q_grid,
                                const GridSpec& p_grid) {
    const auto set = filter_projections(tomograms);
    return {q_grid, p_grid, back_project(set, q_grid, p_grid)};
}

WignerGrid wigner_from_tomogram(std::span<const Tomogram> tomograms) {
    if (tomograms.empty()) throw InsufficientDataError("no tomograms supplied");
    const auto [q, p] = default_phase_grids(tomograms.front().x);
    return wigner_from_tomogram(tomograms, q, p);
}

namespace {

void validate_wave_function(const WaveFunction& psi) {
    validate_grid(psi.y, "wave-function grid");
    if (psi.values.size() != psi.y.points) throw ValidationError("wave-function size mismatch");
    if (!(psi.hbar > 0.0)) throw ValidationError("hbar must be positive");
    if (std::abs(psi.norm_squared() - 1.0) > kDensityTolerance) {
        throw ValidationError("wave function is not normalized (norm^2 " +
                              std::to_string(psi.norm_squared()) + ")");
    }
}

}  // namespace

Tomogram pure_state_tomogram(const WaveFunction& psi, Direction direction, const GridSpec& x_grid) {
    require_direction(direction);
    if (direction.nu == 0.0) {
        throw UnsupportedDirectionError(
            "pure-state formula needs nu != 0; use position_tomogram for the nu = 0 limit");
    }
    validate_grid(x_grid, "X grid");
    validate_wave_function(psi);

    const double hbar = psi.hbar;
    const double mu = direction.mu;
    const double nu = direction.nu;
    const std::size_t ny = psi.y.points;
    const double dy = psi.y.step();

    // Chirped samples with trapezoid weights.
    std::vector<std::complex<double>> chirped(ny);
    for (std::size_t j = 0; j < ny; ++j) {
        const double y = psi.y.at(j);
        const double w = (j == 0 || j + 1 == ny) ? 0.5 : 1.0;
        chirped[j] = w * dy * psi.values[j] * std::polar(1.0, mu * y * y / (2.0 * nu * hbar));
    }

    Tomogram out{x_grid, direction, std::vector<double>(x_grid.points)};
    const double prefactor = 1.0 / (2.0 * kPi * hbar * std::abs(nu));
    for (std::size_t i = 0; i < x_grid.points; ++i) {
        const double c = x_grid.at(i) / (nu * hbar);
        // e^{-i y_j c} by recurrence along the uniform y grid.
        const std::complex<double> step = std::polar(1.0, -dy * c);
        std::complex<double> phase = std::polar(1.0, -psi.y.min * c);
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = 0; j < ny; ++j) {
            acc += chirped[j] * phase;
            phase *= step;
        }
        out.values[i] = prefactor * std::norm(acc);
    }
    return out;
}

Tomogram position_tomogram(const WaveFunction& psi, double mu, const GridSpec& x_grid) {
    if (mu == 0.0 || !std::isfinite(mu)) {
        throw InvalidDirectionError("position tomogram needs mu != 0");
    }
    validate_grid(x_grid, "X grid");
    validate_wave_function(psi);
    Tomogram out{x_grid, {mu, 0.0}, std::vector<double>(x_grid.points)};
    const double dy = psi.y.step();
    const auto last = static_cast<double>(psi.y.points - 1);
    for (std::size_t i = 0; i < x_grid.points; ++i) {
        const double u = (x_grid.at(i) / mu - psi.y.min) / dy;
        if (u < 0.0 || u > last) continue;
        const auto k = std::min(static_cast<std::size_t>(u), psi.y.points - 2);
        const double t = u - static_cast<double>(k);
        const double dens = (1.0 - t) * std::norm(psi.values[k]) + t * std::norm(psi.values[k + 1]);
        out.values[i] = dens / std::abs(mu);
    }
    return out;
}

std::vector<Tomogram> pure_state_tomogram_set(const WaveFunction& psi, const GridSpec& x_grid,
                                              std::size_t directions) {
    std::vector<Tomogram> out;
    out.reserve(directions);
    for (const auto& d : unit_circle_directions(directions)) {
        out.push_back(d.nu == 0.0 ? position_tomogram(psi, d.mu, x_grid)
                                  : pure_state_tomogram(psi, d, x_grid));
    }
    return out;
}

WaveFunction coherent_state(double q0, double p0, const GridSpec& y_grid, double hbar,
                            double spread) {
    validate_grid(y_grid, "wave-function grid");
    if (!(hbar > 0.0) || !(spread > 0.0)) throw ValidationError("hbar and spread must be positive");
    WaveFunction psi{y_grid, std::vector<std::complex<double>>(y_grid.points), hbar};
    const double norm = std::pow(kPi * spread * spread, -0.25);
    for (std::size_t j = 0; j < y_grid.points; ++j) {
        const double y = y_grid.at(j);
        const double d = (y - q0) / spread;
        psi.values[j] = norm * std::exp(-0.5 * d * d) * std::polar(1.0, p0 * y / hbar);
    }
    return psi;
}

Gaussian coherent_state_wigner(double q0, double p0, double hbar, double spread) {
    return Gaussian{q0, p0, spread / std::numbers::sqrt2, hbar / (spread * std::numbers::sqrt2), 0.0};
}

double tomogram_mean_position(const Tomogram& tomogram) {
    if (tomogram.direction.mu != 1.0 || tomogram.direction.nu != 0.0) {
        throw InvalidDirectionError("mean position needs the tomogram at (mu, nu) = (1, 0)");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < tomogram.x.points; ++i) {
        s += tomogram.values[i] * tomogram.x.at(i);
    }
    return s * tomogram.x.step();
}

}  // namespace tomolyap
