#include "tomolyap/quadratic_floquet.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <sstream>

#include "tomolyap/errors.hpp"
#include "tomolyap/matrix_exponential.hpp"

namespace tomolyap {

namespace {

EpsilonState to_state(const EpsilonRecurrence<double>& r) {
    return {{r.a_re, r.a_im}, {r.b_re, r.b_im}, r.n};
}

void require_kicks(int kicks) {
    if (kicks < 0) throw ValidationError("kick count must be >= 0");
}

}  // namespace

EpsilonState harmonic_kick_recurrence(double z, int kicks) {
    require_kicks(kicks);
    EpsilonRecurrence<double> r;
    for (int k = 0; k < kicks; ++k) r.kick(z);
    return to_state(r);
}

std::vector<EpsilonState> harmonic_kick_trajectory(double z, int kicks) {
    require_kicks(kicks);
    std::vector<EpsilonState> out;
    out.reserve(static_cast<std::size_t>(kicks) + 1);
    EpsilonRecurrence<double> r;
    out.push_back(to_state(r));
    for (int k = 0; k < kicks; ++k) {
        r.kick(z);
        out.push_back(to_state(r));
    }
    return out;
}

Eigen::Matrix2d harmonic_floquet_matrix(double z) {
    Eigen::Matrix2d m;
    m << 1.0, 1.0, -z, 1.0 - z;
    return m;
}

std::pair<std::complex<double>, std::complex<double>> harmonic_floquet_eigenvalues(double z) {
    const std::complex<double> root = std::sqrt(std::complex<double>(z * z / 4.0 - z, 0.0));
    const std::complex<double> centre(1.0 - z / 2.0, 0.0);
    return {centre + root, centre - root};
}

double harmonic_lyapunov(double z) {
    if (z >= 0.0 && z <= 4.0) return 0.0;
    const auto [l1, l2] = harmonic_floquet_eigenvalues(z);
    return std::log(std::max(std::abs(l1), std::abs(l2)));
}

DerivativeSeries harmonic_derivative_series(double z, int kicks, double v1, double v2) {
    const auto states = harmonic_kick_trajectory(z, kicks);
    DerivativeSeries s;
    s.g2.reserve(states.size());
    s.g3.reserve(states.size());
    for (const auto& st : states) {
        const std::complex<double> q = st.a + static_cast<double>(st.n) * st.b;
        const std::complex<double> p = st.b;
        s.g2.emplace_back(v1 * q.real() + v2 * q.imag(), 0.0);
        s.g3.emplace_back(v1 * p.real() + v2 * p.imag(), 0.0);
    }
    return s;
}

std::string to_string(CatVariant v) {
    switch (v) {
        case CatVariant::H1: return "H1";
        case CatVariant::H2: return "H2";
        case CatVariant::KickOnly: return "kick_only";
    }
    return "unknown";
}

CatVariant parse_cat_variant(const std::string& text) {
    std::string t;
    for (char c : text) {
        if (c == '-' || c == '_') continue;
        t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (t == "h1") return CatVariant::H1;
    if (t == "h2") return CatVariant::H2;
    if (t == "kickonly") return CatVariant::KickOnly;
    throw ValidationError("unknown cat variant '" + text + "' (expected H1, H2 or kick_only)");
}

double golden_ratio() { return (1.0 + std::sqrt(5.0)) / 2.0; }

QuadraticModel build_cat_model(CatVariant variant) {
    QuadraticModel m;
    m.dof = 2;
    m.tau = 1.0;
    m.b0 = Eigen::MatrixXd::Zero(4, 4);
    m.bk = Eigen::MatrixXd::Zero(4, 4);
    auto sym = [](Eigen::MatrixXd& b, int i, int j) {
        b(i - 1, j - 1) = 1.0;
        b(j - 1, i - 1) = 1.0;
    };
    switch (variant) {
        case CatVariant::H1:
            sym(m.b0, 1, 1);
            sym(m.b0, 2, 2);
            sym(m.b0, 1, 4);
            sym(m.bk, 2, 3);
            break;
        case CatVariant::H2:
            sym(m.b0, 1, 1);
            sym(m.b0, 2, 2);
            sym(m.bk, 1, 4);
            sym(m.bk, 2, 3);
            sym(m.bk, 2, 4);
            break;
        case CatVariant::KickOnly: {
            const double w = golden_ratio();
            Eigen::Matrix2d l;
            l << -w, 2.0 * (1.0 + w) / w, 2.0 * w, w;
            const double c = std::log(1.0 + w) / (w + 2.0);
            m.bk.block<2, 2>(0, 2) = c * l;
            m.bk.block<2, 2>(2, 0) = c * l;
            break;
        }
    }
    return m;
}

QuadraticModel harmonic_model(double z) {
    QuadraticModel m;
    m.dof = 1;
    m.tau = 1.0;
    m.b0 = Eigen::MatrixXd::Zero(2, 2);
    m.bk = Eigen::MatrixXd::Zero(2, 2);
    m.b0(0, 0) = 1.0;
    m.bk(1, 1) = z;
    return m;
}

void validate_model(const QuadraticModel& model) {
    if (model.dof != 1 && model.dof != 2) throw ValidationError("model dimension must be 1 or 2");
    const Eigen::Index n = 2 * model.dof;
    if (model.b0.rows() != n || model.b0.cols() != n || model.bk.rows() != n ||
        model.bk.cols() != n) {
        throw ValidationError("B0 and Bk must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    if (!(model.tau > 0.0) || !std::isfinite(model.tau)) throw ValidationError("tau must be > 0");
    if (!model.b0.allFinite() || !model.bk.allFinite())
        throw ValidationError("B0 and Bk must be finite");
    const double asym0 = (model.b0 - model.b0.transpose()).cwiseAbs().maxCoeff();
    const double asymk = (model.bk - model.bk.transpose()).cwiseAbs().maxCoeff();
    if (asym0 > 1e-14 || asymk > 1e-14) {
        std::ostringstream os;
        os << "B0 and Bk must be symmetric (asymmetry " << std::max(asym0, asymk) << ")";
        throw ValidationError(os.str());
    }
}

Eigen::MatrixXd symplectic_form(int dof) {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(2 * dof, 2 * dof);
    s.block(0, dof, dof, dof) = Eigen::MatrixXd::Identity(dof, dof);
    s.block(dof, 0, dof, dof) = -Eigen::MatrixXd::Identity(dof, dof);
    return s;
}

namespace {

Eigen::MatrixXd one_period(const QuadraticModel& model) {
    validate_model(model);
    const Eigen::MatrixXd sigma = symplectic_form(model.dof);
    return matrix_exponential(sigma * model.b0 * model.tau) * matrix_exponential(sigma * model.bk);
}

}  // namespace

FloquetMatrix floquet_lambda(const QuadraticModel& model, int kicks) {
    require_kicks(kicks);
    const Eigen::MatrixXd step = one_period(model);
    Eigen::MatrixXd lambda = Eigen::MatrixXd::Identity(step.rows(), step.cols());
    for (int k = 0; k < kicks; ++k) lambda = lambda * step;
    return {lambda, kicks};
}

double symplectic_defect(const Eigen::MatrixXd& lambda) {
    if (lambda.rows() != lambda.cols() || lambda.rows() % 2 != 0)
        throw ValidationError("symplectic_defect needs an even square matrix");
    const Eigen::MatrixXd sigma = symplectic_form(static_cast<int>(lambda.rows() / 2));
    return (lambda.transpose() * sigma * lambda - sigma).cwiseAbs().maxCoeff();
}

TransportedParams propagate_tomogram_params(const QuadraticModel& model, int kicks,
                                            const Eigen::VectorXd& mu, const Eigen::VectorXd& nu) {
    validate_model(model);
    if (mu.size() != model.dof || nu.size() != model.dof)
        throw ValidationError("mu and nu must have one entry per degree of freedom");
    const FloquetMatrix f = floquet_lambda(model, kicks);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(f.lambda);
    if (!lu.isInvertible()) throw NumericalError("Floquet matrix is numerically singular");
    Eigen::RowVectorXd row(2 * model.dof);
    row << nu.transpose(), mu.transpose();
    const Eigen::RowVectorXd out = row * lu.inverse();
    return {out.tail(model.dof).transpose(), out.head(model.dof).transpose()};
}

double floquet_lyapunov(const QuadraticModel& model) {
    return std::log(spectral_radius(one_period(model)));
}

double cat_lyapunov(CatVariant variant) { return floquet_lyapunov(build_cat_model(variant)); }

Eigen::Matrix2d kick_only_block_closed_form(int n) {
    const double w = golden_ratio();
    const double s5 = std::sqrt(5.0);
    const double m = 2.0 * n;
    Eigen::Matrix2d out;
    out << std::pow(w, m - 1) + std::pow(w, -(m - 1)), std::pow(w, m) - std::pow(w, -m),
        std::pow(w, m) - std::pow(w, -m), std::pow(w, m + 1) + std::pow(w, -(m + 1));
    return out / s5;
}

Eigen::Matrix2d kick_only_block_as_printed(int n) {
    const double w = golden_ratio();
    const double m = 2.0 * n;
    Eigen::Matrix2d out;
    out << std::pow(w, m - 1) + std::pow(w, -m + 1), std::pow(w, m) - std::pow(w, -m),
        std::pow(w, m) - std::pow(w, -m), std::pow(w, m + 1) + std::pow(w, -m + 1);
    return out;
}

double max_third_derivative(const PhaseFunction& h, int dim, int samples, unsigned seed) {
    if (dim < 1 || samples < 1) throw ValidationError("dimension and sample count must be >= 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> box(-2.0, 2.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    constexpr double step = 0.25;
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        Eigen::VectorXd x(dim), d(dim);
        for (int i = 0; i < dim; ++i) {
            x(i) = box(rng);
            d(i) = gauss(rng);
        }
        const double len = d.norm();
        if (len == 0.0) continue;
        d /= len;
        const double third = (h(x + 2 * step * d) - 2 * h(x + step * d) + 2 * h(x - step * d) -
                              h(x - 2 * step * d)) /
                             (2 * step * step * step);
        if (!std::isfinite(third)) throw NumericalError("phase function is not finite");
        worst = std::max(worst, std::abs(third));
    }
    return worst;
}

bool deformation_vanishes(const PhaseFunction& h, int dim) {
    std::mt19937_64 rng(54321);
    std::uniform_real_distribution<double> box(-2.5, 2.5);
    double scale = 1.0;
    for (int s = 0; s < 64; ++s) {
        Eigen::VectorXd x(dim);
        for (int i = 0; i < dim; ++i) x(i) = box(rng);
        scale = std::max(scale, std::abs(h(x)));
    }
    return max_third_derivative(h, dim) <= 1e-10 * scale * 64.0;
}

bool verify_quadratic_deformation_vanishes(const QuadraticModel& model) {
    validate_model(model);
    const int dim = 2 * model.dof;
    for (const Eigen::MatrixXd* b : {&model.b0, &model.bk}) {
        const Eigen::MatrixXd form = *b;
        PhaseFunction h = [form](const Eigen::VectorXd& q) { return 0.5 * q.dot(form * q); };
        if (!deformation_vanishes(h, dim)) return false;
    }
    return true;
}

}  // namespace tomolyap
