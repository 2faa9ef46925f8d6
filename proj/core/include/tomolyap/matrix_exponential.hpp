#pragma once

#include <Eigen/Dense>

namespace tomolyap {

/// exp(A) for a small dense real matrix: degree-13 Pade approximant with
/// scaling and squaring. Throws NumericalError on non-finite input.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a);

/// max |eigenvalue|.
double spectral_radius(const Eigen::MatrixXd& m);

}  // namespace tomolyap
