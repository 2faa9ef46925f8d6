#pragma once

// Brute-force classical exponents from trajectories and tangent maps.
// Every period is a free flight followed by the kick.

#include <optional>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "tomolyap/quadratic_floquet.hpp"

namespace tomolyap {

/// q <- q + tau p (wrapped to [0, 2 pi)), then p <- p + gamma sin q.
struct StandardMapFamily {
    double gamma = 1.0;
    double tau = 1.0;
};

/// q <- q + p, then p <- p - z q.
struct HarmonicKickFamily {
    double z = 5.0;
};

/// Linear map Lambda(1+) of the quadratic cat model on (p1, p2, x1, x2).
struct CatMapFamily {
    CatVariant variant = CatVariant::KickOnly;
};

using MapFamily = std::variant<StandardMapFamily, HarmonicKickFamily, CatMapFamily>;

struct KickedMapSpec {
    MapFamily family;
    Eigen::VectorXd point;  ///< (q, p), or a 4-vector for the cat family
};

KickedMapSpec standard_map_spec(double gamma, double tau = 1.0, double q0 = 0.0, double p0 = 0.0);
KickedMapSpec harmonic_kick_spec(double z, double q0 = 0.0, double p0 = 0.0);
KickedMapSpec cat_map_spec(CatVariant variant);

std::string describe(const KickedMapSpec& spec);

/// Phase-space dimension of the family (2 or 4).
int dimension(const MapFamily& family);

Eigen::VectorXd period_map(const KickedMapSpec& spec, const Eigen::VectorXd& x);
Eigen::MatrixXd period_jacobian(const KickedMapSpec& spec, const Eigen::VectorXd& x);

struct TangentOptions {
    /// Steps discarded before averaging; default n_steps / 10.
    std::optional<int> transient;
};

/// Average log stretch per period of the tangent vector `v`, renormalized every
/// step. An empty `v` selects the normalized all-ones direction.
double tangent_map_lyapunov(const KickedMapSpec& spec, int n_steps,
                            const Eigen::VectorXd& v = Eigen::VectorXd(),
                            const TangentOptions& options = {});

/// Per-period Jacobian at the spec's point, which must be fixed within 1e-12.
Eigen::MatrixXd monodromy_at_fixed_point(const KickedMapSpec& spec);

}  // namespace tomolyap
