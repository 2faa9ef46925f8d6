#pragma once

// Word expansion of G(1, 1, 1, n) for linear initial data: every period is the
// sum of a free shear K0 and the kick pair (gamma / 2) f(nu) (K+ - K-). The
// evaluation point is transported by 3x3 affine matrices acting on (mu, nu, 1).

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "tomolyap/standard_map.hpp"

namespace tomolyap {

struct SymbolicTerm {
    /// +-(gamma / 2)^(number of kicks in the word).
    double coefficient = 1.0;
    /// M_word x0; its component sum is the value of the initial data at the transported point.
    Eigen::Vector3d affine = Eigen::Vector3d::Zero();
    /// nu at which f is evaluated for each kick, outermost first.
    std::vector<int> f_arguments;
};

struct SymbolicTermSet {
    int steps = 0;
    std::vector<SymbolicTerm> terms;
};

Eigen::Matrix3d symbolic_m0();
/// Shift mu -> mu + 1 after the shear.
Eigen::Matrix3d symbolic_m_plus();
/// Shift mu -> mu - 1 after the shear. The constant row is (-1, -1, +1).
Eigen::Matrix3d symbolic_m_minus();
/// (v1, v2, 0): coefficients of the initial data v1 mu + v2 nu.
Eigen::Vector3d symbolic_x0(double v1 = 1.0, double v2 = 1.0);
/// (0, 1, 0): selects nu.
Eigen::Vector3d symbolic_y0();
/// Sum of components, i.e. the pairing with the start point (1, 1, 1).
double symbolic_trace(const Eigen::Vector3d& v);

inline constexpr int kMaxSymbolicSteps = 12;

/// All 3^n words, unmerged. Throws ResourceError for n > max_steps.
SymbolicTermSet expand_terms(int n, double gamma, double v1 = 1.0, double v2 = 1.0,
                             int max_steps = kMaxSymbolicSteps);

std::complex<double> evaluate_terms(const SymbolicTermSet& terms, const StandardMapParams& params);

/// G(1, 1, 1, n); requires tau = 1 and q0 = p0 = 0.
std::complex<double> symbolic_expand(const StandardMapParams& params, int n,
                                     int max_steps = kMaxSymbolicSteps);

}  // namespace tomolyap
