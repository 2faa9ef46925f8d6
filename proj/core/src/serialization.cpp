#include "tomolyap/serialization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "tomolyap/errors.hpp"

namespace tomolyap {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", kSignificantDigits, v);
    return buf;
}

double round_significant(double v) {
    if (!std::isfinite(v) || v == 0.0) return v == 0.0 ? 0.0 : v;
    return std::stod(format_number(v));
}

namespace {

Json number(double v) {
    if (!std::isfinite(v)) return format_number(v);
    return round_significant(v);
}

Json values_array(std::span<const double> values) {
    Json a = Json::array();
    for (double v : values) a.push_back(number(v));
    return a;
}

}  // namespace

Json to_json(const GridSpec& grid) {
    return Json{{"min", number(grid.min)}, {"max", number(grid.max)}, {"points", grid.points}};
}

GridSpec grid_from_json(const Json& j) {
    try {
        GridSpec g{j.at("min").get<double>(), j.at("max").get<double>(),
                   j.at("points").get<std::size_t>()};
        validate_grid(g, "grid");
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed grid JSON: ") + e.what());
    }
}

Json to_json(const Tomogram& t) {
    return Json{{"direction", {{"mu", number(t.direction.mu)}, {"nu", number(t.direction.nu)}}},
                {"x_grid", to_json(t.x)},
                {"values", values_array(t.values)}};
}

Tomogram tomogram_from_json(const Json& j) {
    try {
        Tomogram t;
        t.direction = {j.at("direction").at("mu").get<double>(),
                       j.at("direction").at("nu").get<double>()};
        t.x = grid_from_json(j.at("x_grid"));
        t.values = j.at("values").get<std::vector<double>>();
        if (t.values.size() != t.x.points)
            throw ValidationError("tomogram values do not match the X grid");
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("malformed tomogram JSON: ") + e.what());
    }
}

std::string tomogram_csv(const Tomogram& t) {
    std::ostringstream os;
    os << "X,w\n";
    for (std::size_t i = 0; i < t.values.size(); ++i)
        os << format_number(t.x.at(i)) << ',' << format_number(t.values[i]) << '\n';
    return os.str();
}

Json to_json(const DensityGrid& g) {
    return Json{{"q_grid", to_json(g.q)}, {"p_grid", to_json(g.p)}, {"values", values_array(g.values)}};
}

Json to_json(const WignerGrid& g) {
    return Json{{"q_grid", to_json(g.q)}, {"p_grid", to_json(g.p)}, {"values", values_array(g.values)}};
}

Json to_json(const ExponentEstimate& e) {
    return Json{{"slope", number(e.slope)},
                {"intercept", number(e.intercept)},
                {"stderr", number(e.std_error)},
                {"window", Json::array({e.window.lo, e.window.hi})},
                {"classification", to_string(e.classification)}};
}

Json to_json(const StandardMapParams& p) {
    return Json{{"gamma", number(p.gamma)}, {"tau", number(p.tau)}, {"hbar", number(p.hbar)},
                {"q0", number(p.q0)},       {"p0", number(p.p0)},   {"v1", number(p.v1)},
                {"v2", number(p.v2)}};
}

Json complex_to_json(std::complex<double> z) {
    return Json::array({number(z.real()), number(z.imag())});
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(number(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string series_csv(const DerivativeSeries& s) {
    std::ostringstream os;
    os << "t,re_g2,im_g2,re_g3,im_g3,abs_probe,log_norm\n";
    for (std::size_t t = 0; t < s.size(); ++t) {
        const double probe = t < s.probe.size() ? std::abs(s.probe[t]) : std::nan("");
        const double n = s.norm(t);
        os << t << ',' << format_number(s.g2[t].real()) << ',' << format_number(s.g2[t].imag())
           << ',' << format_number(s.g3[t].real()) << ',' << format_number(s.g3[t].imag()) << ','
           << format_number(probe) << ',' << format_number(n > 0.0 ? std::log(n) : -INFINITY)
           << '\n';
    }
    return os.str();
}

std::string running_csv(std::span<const RunningPoint> points) {
    std::ostringstream os;
    os << "t,lambda\n";
    for (const auto& p : points) os << p.t << ',' << format_number(p.lambda) << '\n';
    return os.str();
}

namespace {

Json eigen_list(const Eigen::MatrixXd& m) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    std::vector<std::complex<double>> ev(es.eigenvalues().data(),
                                         es.eigenvalues().data() + es.eigenvalues().size());
    std::sort(ev.begin(), ev.end(), [](auto a, auto b) {
        if (std::abs(a) != std::abs(b)) return std::abs(a) > std::abs(b);
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    Json out = Json::array();
    for (auto z : ev) out.push_back(complex_to_json(z));
    return out;
}

}  // namespace

Json floquet_report(CatVariant variant) {
    const QuadraticModel model = build_cat_model(variant);
    const FloquetMatrix f = floquet_lambda(model, 1);
    return Json{{"system", "cat"},
                {"variant", to_string(variant)},
                {"floquet_matrix", matrix_to_json(f.lambda)},
                {"eigenvalues", eigen_list(f.lambda)},
                {"lyapunov", number(cat_lyapunov(variant))},
                {"deformation_vanishes", verify_quadratic_deformation_vanishes(model)}};
}

Json harmonic_floquet_report(double z) {
    const auto [l1, l2] = harmonic_floquet_eigenvalues(z);
    return Json{{"system", "harmonic"},
                {"z", number(z)},
                {"floquet_matrix", matrix_to_json(harmonic_floquet_matrix(z))},
                {"eigenvalues", Json::array({complex_to_json(l1), complex_to_json(l2)})},
                {"lyapunov", number(harmonic_lyapunov(z))}};
}

std::string oracle_csv(std::span<const OracleRow> rows) {
    std::ostringstream os;
    os << "spec,n_steps,lambda\n";
    for (const auto& r : rows) os << '"' << r.spec << "\"," << r.n_steps << ',' << format_number(r.lambda) << '\n';
    return os.str();
}

}  // namespace tomolyap
