#pragma once

// Kicked quadratic systems: the harmonic kick on the line and the
// configurational quantum cat. For quadratic Hamiltonians the tomographic
// evolution carries no hbar corrections, so one Floquet matrix serves both
// the classical and the quantum exponent.

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tomolyap/derivative_series.hpp"

namespace tomolyap {

// ---------------------------------------------------------------------------
// Harmonic kicks, V = z q^2 / 2 * sum_n delta(t - n).

/// Between kicks n and n + 1, eps(t) = a + b t.
struct EpsilonState {
    std::complex<double> a{1.0, 0.0};
    std::complex<double> b{0.0, 1.0};
    int n = 0;

    /// Im(conj(a) b); conserved by the recurrence.
    double wronskian() const { return std::imag(std::conj(a) * b); }
};

/// Real and imaginary parts of (a, b) evolve independently under the real
/// recurrence, so the scalar type only needs field arithmetic. Instantiated
/// with double by the library; tests use extended precision to check the
/// Wronskian where double cancellation would hide it.
template <class Real>
struct EpsilonRecurrence {
    Real a_re{1}, a_im{0}, b_re{0}, b_im{1};
    int n = 0;

    void kick(const Real& z) {
        ++n;
        const Real k(n);
        const Real m00 = Real(1) + z * k;
        const Real m01 = z * k * k;
        const Real m10 = -z;
        const Real m11 = Real(1) - z * k;
        const Real ar = m00 * a_re + m01 * b_re;
        const Real br = m10 * a_re + m11 * b_re;
        const Real ai = m00 * a_im + m01 * b_im;
        const Real bi = m10 * a_im + m11 * b_im;
        a_re = ar;
        b_re = br;
        a_im = ai;
        b_im = bi;
    }

    Real wronskian() const { return a_re * b_im - a_im * b_re; }
};

/// Applies the kick-n recurrence matrix [[1 + z n, z n^2], [-z, 1 - z n]]
/// for n = 1..kicks starting from (a, b) = (1, i).
EpsilonState harmonic_kick_recurrence(double z, int kicks);

/// All states for n = 0..kicks.
std::vector<EpsilonState> harmonic_kick_trajectory(double z, int kicks);

/// Position/momentum map just after each kick: [[1, 1], [-z, 1 - z]].
Eigen::Matrix2d harmonic_floquet_matrix(double z);

/// 1 - z/2 +- sqrt(z^2/4 - z).
std::pair<std::complex<double>, std::complex<double>> harmonic_floquet_eigenvalues(double z);

/// ln of the Floquet spectral radius; exactly 0 on the elliptic range 0 <= z <= 4.
double harmonic_lyapunov(double z);

/// (G2, G3) at mu = nu = 0 for the linear initial condition v1 mu + v2 nu:
/// G2 = v1 Re eps + v2 Im eps, G3 = v1 Re eps' + v2 Im eps', evaluated just after each kick.
DerivativeSeries harmonic_derivative_series(double z, int kicks, double v1 = 1.0, double v2 = 1.0);

// ---------------------------------------------------------------------------
// General quadratic kicked models, H = Q^T B0 Q / 2 + Q^T Bk Q / 2 * sum_n delta(t - n tau),
// phase-space vector Q = (p_1..p_n, x_1..x_n).

struct QuadraticModel {
    int dof = 1;
    Eigen::MatrixXd b0;
    Eigen::MatrixXd bk;
    double tau = 1.0;
};

enum class CatVariant { H1, H2, KickOnly };

std::string to_string(CatVariant v);
/// Accepts "H1", "h1", "H2", "h2", "kick_only", "KickOnly", "kick-only".
CatVariant parse_cat_variant(const std::string& text);

/// Golden ratio (1 + sqrt 5) / 2.
double golden_ratio();

QuadraticModel build_cat_model(CatVariant variant);

/// dof = 1 model equivalent to the harmonic kick of strength z.
QuadraticModel harmonic_model(double z);

void validate_model(const QuadraticModel& model);

/// [[0, I], [-I, 0]] in the (p, x) ordering.
Eigen::MatrixXd symplectic_form(int dof);

struct FloquetMatrix {
    Eigen::MatrixXd lambda;
    int kicks = 0;
};

/// Lambda(n+) = (exp(Sigma B0 tau) exp(Sigma Bk))^n: free flight, then the kick.
FloquetMatrix floquet_lambda(const QuadraticModel& model, int kicks);

/// max |Lambda^T Sigma Lambda - Sigma|.
double symplectic_defect(const Eigen::MatrixXd& lambda);

/// Row-vector transport (nu_L, mu_L) = (nu, mu) Lambda^-1(n+).
struct TransportedParams {
    Eigen::VectorXd mu;
    Eigen::VectorXd nu;
};
TransportedParams propagate_tomogram_params(const QuadraticModel& model, int kicks,
                                            const Eigen::VectorXd& mu, const Eigen::VectorXd& nu);

/// ln of the spectral radius of Lambda(1+).
double cat_lyapunov(CatVariant variant);
double floquet_lyapunov(const QuadraticModel& model);

/// Cat map [[1, 1], [1, 2]]^n in closed form,
/// (1/sqrt5) [[w^(2n-1) + w^-(2n-1), w^2n - w^-2n], [w^2n - w^-2n, w^(2n+1) + w^-(2n+1)]].
/// This is the block of Lambda(n+) for the kick-only model.
Eigen::Matrix2d kick_only_block_closed_form(int n);

/// Uncorrected form: no 1/sqrt5 factor and w^(-2n+1) in the lower-right entry.
/// Kept for comparison only.
Eigen::Matrix2d kick_only_block_as_printed(int n);

// ---------------------------------------------------------------------------
// hbar-deformation check.

using PhaseFunction = std::function<double(const Eigen::VectorXd&)>;

/// Largest third directional derivative of `h` found by central differences at
/// `samples` random points and directions (fixed seed).
double max_third_derivative(const PhaseFunction& h, int dim, int samples = 64,
                            unsigned seed = 12345);

/// True when every odd (>= 3) derivative term of the deformation series
/// vanishes for both quadratic forms of the model.
bool verify_quadratic_deformation_vanishes(const QuadraticModel& model);

/// Same probe on an arbitrary phase-space function.
bool deformation_vanishes(const PhaseFunction& h, int dim);

}  // namespace tomolyap
