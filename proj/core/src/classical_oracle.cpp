#include "tomolyap/classical_oracle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tomolyap/errors.hpp"

namespace tomolyap {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double q) {
    double r = std::fmod(q, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

void check_point(const KickedMapSpec& spec, const Eigen::VectorXd& x) {
    if (x.size() != dimension(spec.family))
        throw ValidationError("phase-space point has the wrong dimension for the map family");
    if (!x.allFinite()) throw NumericalError("non-finite phase-space point");
}

}  // namespace

KickedMapSpec standard_map_spec(double gamma, double tau, double q0, double p0) {
    if (!std::isfinite(gamma)) throw ValidationError("gamma must be finite");
    if (!(tau > 0.0) || !std::isfinite(tau)) throw ValidationError("tau must be > 0");
    return {StandardMapFamily{gamma, tau}, Eigen::Vector2d(wrap_angle(q0), p0)};
}

KickedMapSpec harmonic_kick_spec(double z, double q0, double p0) {
    if (!std::isfinite(z)) throw ValidationError("z must be finite");
    return {HarmonicKickFamily{z}, Eigen::Vector2d(q0, p0)};
}

KickedMapSpec cat_map_spec(CatVariant variant) {
    return {CatMapFamily{variant}, Eigen::VectorXd::Zero(4)};
}

std::string describe(const KickedMapSpec& spec) {
    std::ostringstream os;
    std::visit(Overloaded{
                   [&](const StandardMapFamily& f) {
                       os << "standard_map(gamma=" << f.gamma << ",tau=" << f.tau << ")";
                   },
                   [&](const HarmonicKickFamily& f) { os << "harmonic_kick(z=" << f.z << ")"; },
                   [&](const CatMapFamily& f) { os << "cat_map(" << to_string(f.variant) << ")"; },
               },
               spec.family);
    os << "@(";
    for (Eigen::Index i = 0; i < spec.point.size(); ++i) os << (i ? "," : "") << spec.point(i);
    os << ")";
    return os.str();
}

int dimension(const MapFamily& family) {
    return std::holds_alternative<CatMapFamily>(family) ? 4 : 2;
}

Eigen::VectorXd period_map(const KickedMapSpec& spec, const Eigen::VectorXd& x) {
    check_point(spec, x);
    return std::visit(
        Overloaded{
            [&](const StandardMapFamily& f) -> Eigen::VectorXd {
                const double q = wrap_angle(x(0) + f.tau * x(1));
                return Eigen::Vector2d(q, x(1) + f.gamma * std::sin(q));
            },
            [&](const HarmonicKickFamily& f) -> Eigen::VectorXd {
                const double q = x(0) + x(1);
                return Eigen::Vector2d(q, x(1) - f.z * q);
            },
            [&](const CatMapFamily& f) -> Eigen::VectorXd {
                return floquet_lambda(build_cat_model(f.variant), 1).lambda * x;
            },
        },
        spec.family);
}

Eigen::MatrixXd period_jacobian(const KickedMapSpec& spec, const Eigen::VectorXd& x) {
    check_point(spec, x);
    return std::visit(
        Overloaded{
            [&](const StandardMapFamily& f) -> Eigen::MatrixXd {
                const double c = f.gamma * std::cos(x(0) + f.tau * x(1));
                Eigen::Matrix2d j;
                j << 1.0, f.tau, c, 1.0 + c * f.tau;
                return j;
            },
            [&](const HarmonicKickFamily& f) -> Eigen::MatrixXd {
                return harmonic_floquet_matrix(f.z);
            },
            [&](const CatMapFamily& f) -> Eigen::MatrixXd {
                return floquet_lambda(build_cat_model(f.variant), 1).lambda;
            },
        },
        spec.family);
}

double tangent_map_lyapunov(const KickedMapSpec& spec, int n_steps, const Eigen::VectorXd& v,
                            const TangentOptions& options) {
    if (n_steps < 100) throw ValidationError("tangent-map exponent needs n_steps >= 100");
    const int dim = dimension(spec.family);
    const int transient = options.transient.value_or(n_steps / 10);
    if (transient < 0 || transient >= n_steps)
        throw ValidationError("transient must lie in [0, n_steps)");
    Eigen::VectorXd u = v.size() == 0 ? Eigen::VectorXd::Ones(dim) : v;
    if (u.size() != dim) throw ValidationError("tangent vector has the wrong dimension");
    const double len = u.norm();
    if (!(len > 0.0) || !std::isfinite(len)) throw ValidationError("tangent vector must be nonzero");
    u /= len;

    const bool linear = !std::holds_alternative<StandardMapFamily>(spec.family);
    const Eigen::MatrixXd fixed_jac = linear ? period_jacobian(spec, spec.point) : Eigen::MatrixXd();

    Eigen::VectorXd x = spec.point;
    double sum = 0.0;
    for (int t = 0; t < n_steps; ++t) {
        const Eigen::MatrixXd jac = linear ? fixed_jac : period_jacobian(spec, x);
        u = jac * u;
        const double s = u.norm();
        if (!(s > 0.0) || !std::isfinite(s)) throw NumericalError("tangent vector became degenerate");
        u /= s;
        if (t >= transient) sum += std::log(s);
        if (!linear) {
            x = period_map(spec, x);
            if (!x.allFinite()) throw NumericalError("trajectory left the finite range");
        }
    }
    return sum / static_cast<double>(n_steps - transient);
}

Eigen::MatrixXd monodromy_at_fixed_point(const KickedMapSpec& spec) {
    const Eigen::VectorXd next = period_map(spec, spec.point);
    Eigen::VectorXd diff = next - spec.point;
    if (std::holds_alternative<StandardMapFamily>(spec.family)) {
        diff(0) = std::remainder(diff(0), kTwoPi);
    }
    if (diff.cwiseAbs().maxCoeff() > 1e-12) {
        throw ValidationError("point " + describe(spec) + " is not a fixed point of the period map");
    }
    return period_jacobian(spec, spec.point);
}

}  // namespace tomolyap
