#include "tomolyap/matrix_exponential.hpp"

#include <array>
#include <cmath>

#include "tomolyap/errors.hpp"

namespace tomolyap {

namespace {

// Pade(13) coefficients and the 1-norm bound below which no scaling is needed
// (Higham, "The scaling and squaring method for the matrix exponential revisited").
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};
constexpr double kTheta13 = 5.371920351148152;

}  // namespace

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols()) throw ValidationError("matrix exponential needs a square matrix");
    if (!a.allFinite()) throw NumericalError("matrix exponential of a non-finite matrix");
    const Eigen::Index n = a.rows();
    if (n == 0) return a;

    const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm1 > kTheta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
    }
    const Eigen::MatrixXd x = a / std::ldexp(1.0, squarings);

    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
    const Eigen::MatrixXd x2 = x * x;
    const Eigen::MatrixXd x4 = x2 * x2;
    const Eigen::MatrixXd x6 = x4 * x2;
    const auto& b = kPade13;

    const Eigen::MatrixXd u_inner = b[13] * x6 + b[11] * x4 + b[9] * x2;
    const Eigen::MatrixXd u = x * (x6 * u_inner + b[7] * x6 + b[5] * x4 + b[3] * x2 + b[1] * id);
    const Eigen::MatrixXd v_inner = b[12] * x6 + b[10] * x4 + b[8] * x2;
    const Eigen::MatrixXd v = x6 * v_inner + b[6] * x6 + b[4] * x4 + b[2] * x2 + b[0] * id;

    Eigen::MatrixXd r = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < squarings; ++i) r = r * r;
    if (!r.allFinite()) throw NumericalError("matrix exponential overflowed");
    return r;
}

double spectral_radius(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) throw ValidationError("spectral radius needs a square matrix");
    if (!m.allFinite()) throw NumericalError("spectral radius of a non-finite matrix");
    Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw NumericalError("eigenvalue iteration failed");
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

}  // namespace tomolyap
