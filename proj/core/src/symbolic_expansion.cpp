#include "tomolyap/symbolic_expansion.hpp"

#include <cmath>

#include "tomolyap/errors.hpp"

namespace tomolyap {

Eigen::Matrix3d symbolic_m0() {
    Eigen::Matrix3d m;
    m << 1, 1, 0, 0, 1, 0, 0, 0, 1;
    return m;
}

Eigen::Matrix3d symbolic_m_plus() {
    Eigen::Matrix3d m;
    m << 1, 1, 0, 0, 1, 0, 1, 1, 1;
    return m;
}

Eigen::Matrix3d symbolic_m_minus() {
    Eigen::Matrix3d m;
    m << 1, 1, 0, 0, 1, 0, -1, -1, 1;
    return m;
}

Eigen::Vector3d symbolic_x0(double v1, double v2) { return {v1, v2, 0.0}; }

Eigen::Vector3d symbolic_y0() { return {0.0, 1.0, 0.0}; }

double symbolic_trace(const Eigen::Vector3d& v) { return v.sum(); }

namespace {

struct Expander {
    const Eigen::Matrix3d m[3] = {symbolic_m0(), symbolic_m_plus(), symbolic_m_minus()};
    Eigen::Vector3d x0;
    Eigen::Vector3d y0 = symbolic_y0();
    double half_gamma;
    int n;
    std::vector<SymbolicTerm>* out;
    std::vector<int> args;

    void walk(int depth, const Eigen::Matrix3d& prefix, double coefficient) {
        if (depth == n) {
            out->push_back({coefficient, prefix * x0, args});
            return;
        }
        walk(depth + 1, prefix * m[0], coefficient);
        const int nu = static_cast<int>(std::lround(symbolic_trace(prefix * y0)));
        args.push_back(nu);
        walk(depth + 1, prefix * m[1], coefficient * half_gamma);
        walk(depth + 1, prefix * m[2], -coefficient * half_gamma);
        args.pop_back();
    }
};

}  // namespace

SymbolicTermSet expand_terms(int n, double gamma, double v1, double v2, int max_steps) {
    if (n < 0) throw ValidationError("expansion depth must be >= 0");
    if (n > max_steps) {
        throw ResourceError("symbolic expansion of " + std::to_string(n) +
                            " periods exceeds the budget of " + std::to_string(max_steps) +
                            " (3^n terms)");
    }
    SymbolicTermSet set;
    set.steps = n;
    set.terms.reserve(static_cast<std::size_t>(std::pow(3.0, n)));
    Expander e{.x0 = symbolic_x0(v1, v2), .half_gamma = gamma / 2.0, .n = n, .out = &set.terms, .args = {}};
    e.walk(0, Eigen::Matrix3d::Identity(), 1.0);
    return set;
}

std::complex<double> evaluate_terms(const SymbolicTermSet& terms, const StandardMapParams& params) {
    double sum = 0.0;
    for (const auto& t : terms.terms) {
        double w = t.coefficient;
        for (int a : t.f_arguments) w *= kick_profile(params, a);
        sum += w * symbolic_trace(t.affine);
    }
    return sum;
}

std::complex<double> symbolic_expand(const StandardMapParams& params, int n, int max_steps) {
    validate_params(params);
    if (params.tau != 1.0) throw ValidationError("symbolic expansion requires tau = 1");
    if (params.q0 != 0.0 || params.p0 != 0.0)
        throw ValidationError("symbolic expansion requires q0 = p0 = 0");
    return evaluate_terms(expand_terms(n, params.gamma, params.v1, params.v2, max_steps), params);
}

}  // namespace tomolyap
