#pragma once

// Kicked rotor in the tomographic picture: the symbol G(1, mu, nu, t) on the
// shear lattice mu = j, nu = k tau. One period is a free shear
// G(j, k) <- G(j, k + j) followed by the kick
// G(j, k) <- G(j, k) + (gamma / 2) f(k tau) (G(j + 1, k) - G(j - 1, k)),
// with f(nu) = nu classically and f(nu) = (2 / hbar) sin(hbar nu / 2) for hbar > 0.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "tomolyap/derivative_series.hpp"
#include "tomolyap/exponent_estimator.hpp"

namespace tomolyap {

struct StandardMapParams {
    double gamma = 1.0;
    double tau = 1.0;
    double hbar = 0.0;  ///< 0 selects the classical kick profile
    double q0 = 0.0;
    double p0 = 0.0;
    double v1 = 1.0;
    double v2 = 1.0;
};

void validate_params(const StandardMapParams& params);

/// f(nu) for the regime selected by hbar.
double kick_profile(const StandardMapParams& params, double nu);

/// Nominal lattice window |j| <= J, |k| <= K for a horizon of n periods:
/// J = n + 2, K = (n + 1)(n + 2) / 2 + 2.
struct LatticeWindow {
    int j_extent = 0;
    int k_extent = 0;
};
LatticeWindow nominal_window(int n_max);

inline constexpr std::size_t kDefaultMemoryBudget = std::size_t{2} << 30;

/// Scalar used for lattice cells. Rounding noise in far cells is amplified by
/// up to |gamma f(k tau)| per period, so classical runs need exact arithmetic.
///  - Double: IEEE double.
///  - Quad: 113-bit binary floating point (exact for integer data below 2^113).
///  - Auto: Quad for hbar = 0, Double otherwise.
enum class LatticeArithmetic { Auto, Double, Quad };

struct LatticeOptions {
    std::size_t memory_budget = kDefaultMemoryBudget;
    LatticeArithmetic arithmetic = LatticeArithmetic::Auto;
};

/// Lattice state restricted to the cells that can still influence the probe
/// points (1, 1) and (-1, -1) up to the horizon.
class GField {
public:
    GField();
    GField(const GField&);
    GField(GField&&) noexcept;
    GField& operator=(const GField&);
    GField& operator=(GField&&) noexcept;
    ~GField();

    const StandardMapParams& params() const { return params_; }
    int time() const { return time_; }
    int horizon() const { return horizon_; }
    LatticeWindow window() const { return window_; }
    /// Double or Quad.
    LatticeArithmetic arithmetic() const;
    /// False once any step rounded (tracked for Double only; Quad reports true).
    bool exact() const { return exact_; }

    bool contains(int j, int k) const;
    /// Throws ConeError outside the stored cone.
    std::complex<double> at(int j, int k) const;
    std::size_t cell_count() const;

    /// Calls fn(j, k, value) for every stored cell.
    void for_each(const std::function<void(int, int, std::complex<double>)>& fn) const;

    /// One period: free shear then kick. Throws ConeError past the horizon.
    void advance();

    struct Row {
        int lo = 0;
        int hi = -1;
        std::size_t offset = 0;
    };
    struct Layer {
        int j_min = 0;
        std::vector<Row> rows;
        std::size_t cells = 0;
    };
    struct Storage;

private:
    friend GField init_gfield(const StandardMapParams&, int, const LatticeOptions&);

    const Row* find_row(int time, int j) const;

    StandardMapParams params_;
    int time_ = 0;
    int horizon_ = 0;
    bool exact_ = true;
    LatticeWindow window_;
    std::shared_ptr<const std::vector<Layer>> layers_;
    std::unique_ptr<Storage> storage_;
};

/// (v1 mu + v2 nu) exp(i (q0 mu + p0 nu)) at mu = j, nu = k tau on the cone
/// for `n_max` periods. Throws ResourceError when the cone exceeds the budget.
GField init_gfield(const StandardMapParams& params, int n_max, const LatticeOptions& options = {});

/// Copying form of GField::advance.
GField step_period(GField field);

/// Probe values G(1, 1, tau, t) and G(1, -1, -tau, t), t = 0..n.
struct ProbeHistory {
    std::vector<std::complex<double>> plus;
    std::vector<std::complex<double>> minus;
};

/// G2[t+1] = G2[t] + tau G3[t], G3[t+1] = G3[t] + (gamma / 2)(plus[t] - minus[t]),
/// G2[0] = v1, G3[0] = v2. Produces size(plus) points.
DerivativeSeries derivative_iteration(const ProbeHistory& probes, const StandardMapParams& params);

/// U_n of U_{n+1} = z U_n - U_{n-1}, U_0 = 1, U_{-1} = 0; valid for n >= -2.
double chebyshev_u(double z, int n);

/// Linear classical solution (G2_n, G3_n) = (A v1 + B v2, C v1 + D v2), z = 2 + gamma.
struct ClosedFormCoefficients {
    double a;
    double b;
    double c;
    double d;
};
ClosedFormCoefficients closed_form_coefficients(double gamma, int n);
std::pair<double, double> classical_closed_form(double gamma, double v1, double v2, int n);

/// ln of the spectral radius of the period map with trace 2 + gamma; 0 on -4 <= gamma <= 0.
double classical_lyapunov(double gamma);

struct RunOptions {
    std::size_t memory_budget = kDefaultMemoryBudget;
    /// Auto here runs classical lattices in Double first and repeats the run in
    /// Quad when any step rounded.
    LatticeArithmetic arithmetic = LatticeArithmetic::Auto;
    EstimatorOptions estimator;
};

struct StandardMapRun {
    DerivativeSeries series;
    ProbeHistory probes;
    ExponentEstimate estimate;
    std::vector<RunningPoint> running;
    LatticeArithmetic arithmetic = LatticeArithmetic::Double;
    bool exact = false;
};

StandardMapRun run_standard_map(const StandardMapParams& params, int n_max,
                                const RunOptions& options = {});

/// Least-squares slope of Re G(1, 1, tau, n) against n over [lo, hi].
double probe_linear_trend(const ProbeHistory& probes, std::size_t lo, std::size_t hi);

/// Closest p/q with q <= max_denominator when |x - p/q| <= tolerance.
std::optional<std::pair<std::int64_t, std::int64_t>> near_rational(double x,
                                                                  int max_denominator = 64,
                                                                  double tolerance = 1e-9);

/// True for hbar > 0 when hbar tau / (4 pi) is near a rational with small denominator.
bool resonant_hbar_tau(const StandardMapParams& params);

}  // namespace tomolyap
