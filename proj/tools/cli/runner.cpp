#include "runner.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "tomolyap/classical_oracle.hpp"
#include "tomolyap/exponent_estimator.hpp"
#include "tomolyap/quadratic_floquet.hpp"
#include "tomolyap/serialization.hpp"
#include "tomolyap/standard_map.hpp"
#include "tomolyap/tomography.hpp"
#include "tomolyap/version.hpp"

namespace tomolyap::cli {

namespace fs = std::filesystem;

namespace {

void ensure_directory(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw IoError("cannot create output directory '" + dir.string() + "'");
}

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& content) {
    ensure_directory(dir);
    const fs::path path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    out.close();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
    return path;
}

Json number_or_null(const std::optional<double>& v) {
    if (!v) return nullptr;
    return round_significant(*v);
}

std::string csv_cell(const std::optional<double>& v) { return v ? format_number(*v) : ""; }

Json running_json(const std::vector<RunningPoint>& running) {
    Json out = Json::array();
    for (const auto& p : running) out.push_back({p.t, round_significant(p.lambda)});
    return out;
}

Json series_json(const DerivativeSeries& s) {
    Json rows = Json::array();
    for (std::size_t t = 0; t < s.size(); ++t) {
        Json row = {{"t", t},
                    {"g2", complex_to_json(s.g2[t])},
                    {"g3", complex_to_json(s.g3[t])}};
        if (t < s.probe.size()) row["probe"] = complex_to_json(s.probe[t]);
        rows.push_back(std::move(row));
    }
    return rows;
}

Json running_summary(const std::vector<RunningPoint>& running) {
    if (running.empty()) return nullptr;
    return {{"t", running.back().t},
            {"lambda", round_significant(running.back().lambda)},
            {"tail_decreasing", tail_decreasing(running)}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

struct Context {
    const ExperimentConfig& config;
    RunOutcome& outcome;

    void add(const std::string& name, const std::string& content) {
        outcome.files.push_back(write_file(config.out, name, content));
    }
    void add_series(const DerivativeSeries& series, const std::vector<RunningPoint>& running) {
        if (config.format == OutputFormat::Csv) {
            add("series.csv", series_csv(series));
            add("running.csv", running_csv(running));
        } else {
            add("series.json", dump(Json{{"series", series_json(series)},
                                         {"running", running_json(running)}}));
        }
    }
    void add_report(const std::vector<ReportRow>& rows) {
        for (auto& p : emit_report(rows, config.out, config.format)) outcome.files.push_back(p);
    }
};

Json row_json(const ReportRow& r) {
    return {{"system", r.system},
            {"classical", number_or_null(r.classical)},
            {"quantum", number_or_null(r.quantum)},
            {"oracle", number_or_null(r.oracle)},
            {"closed_form", number_or_null(r.closed_form)}};
}

std::string harmonic_label(double z) { return "harmonic z=" + format_number(z); }
std::string cat_label(CatVariant v) { return "cat " + to_string(v); }
std::string standard_label(double gamma) { return "standard gamma=" + format_number(gamma); }

EstimatorOptions estimator_for(int n) {
    EstimatorOptions o;
    o.min_length = std::min<std::size_t>(o.min_length, static_cast<std::size_t>(n) + 1);
    return o;
}

StandardMapParams params_of(const ExperimentConfig& c, double hbar) {
    StandardMapParams p;
    p.gamma = c.gamma;
    p.tau = c.tau;
    p.hbar = hbar;
    p.q0 = c.q0;
    p.p0 = c.p0;
    p.v1 = c.v1;
    p.v2 = c.v2;
    return p;
}

std::optional<double> standard_closed_form(const ExperimentConfig& c) {
    if (c.q0 == 0.0 && c.p0 == 0.0 && c.tau == 1.0) return classical_lyapunov(c.gamma);
    return std::nullopt;
}

int oracle_steps(const ExperimentConfig& c) {
    return c.kind == ExperimentKind::Oracle ? effective_steps(c) : 10000;
}

ReportRow harmonic_row(const ExperimentConfig& c, const ExponentEstimate& e) {
    const double oracle = tangent_map_lyapunov(harmonic_kick_spec(c.z), oracle_steps(c));
    return {harmonic_label(c.z), e.slope, e.slope, oracle, harmonic_lyapunov(c.z)};
}

ReportRow cat_row(const ExperimentConfig& c) {
    const double lambda = cat_lyapunov(c.variant);
    const int steps = c.kind == ExperimentKind::Cat ? effective_steps(c) : 1000;
    const double oracle = tangent_map_lyapunov(cat_map_spec(c.variant), steps);
    std::optional<double> closed;
    if (c.variant == CatVariant::KickOnly) closed = 2.0 * std::log(golden_ratio());
    return {cat_label(c.variant), lambda, lambda, oracle, closed};
}

Json tomography(Context& ctx) {
    const auto& c = ctx.config;
    const std::size_t points = static_cast<std::size_t>(effective_steps(c));
    const std::size_t directions = static_cast<std::size_t>(c.directions);
    Json results;
    std::vector<Tomogram> tomograms;
    if (c.state == "coherent") {
        const Gaussian w = coherent_state_wigner(c.q0, c.p0, c.hbar);
        const GridSpec x_grid = common_x_grid(w, points);
        const double half = 12.0 * std::max(1.0, std::sqrt(c.hbar));
        const GridSpec y_grid{c.q0 - half, c.q0 + half, 2048};
        const WaveFunction psi = coherent_state(c.q0, c.p0, y_grid, c.hbar);
        tomograms = pure_state_tomogram_set(psi, x_grid, directions);
        const WignerGrid wigner = wigner_from_tomogram(tomograms);
        std::size_t best = 0;
        for (std::size_t i = 1; i < wigner.values.size(); ++i)
            if (wigner.values[i] > wigner.values[best]) best = i;
        const std::size_t iq = best / wigner.p.points;
        const std::size_t ip = best % wigner.p.points;
        double worst = 0.0;
        for (std::size_t i = 0; i < wigner.q.points; ++i)
            for (std::size_t j = 0; j < wigner.p.points; ++j)
                worst = std::max(worst, std::abs(wigner.at(i, j) - w(wigner.q.at(i), wigner.p.at(j))));
        results = {{"state", "coherent"},
                   {"wigner_integral", round_significant(wigner.integral())},
                   {"wigner_peak", {round_significant(wigner.q.at(iq)), round_significant(wigner.p.at(ip))}},
                   {"max_abs_error", round_significant(worst)},
                   {"peak_value", round_significant(w(c.q0, c.p0))}};
        if (c.format == OutputFormat::Json) ctx.add("wigner.json", dump(to_json(wigner)));
    } else {
        const Gaussian g{c.q0, c.p0, c.sigma_q, c.sigma_p, c.correlation};
        validate_density(g);
        const GridSpec x_grid = common_x_grid(g, points);
        tomograms = tomogram_set(g, x_grid, directions);
        const DensityGrid recon = inverse_tomogram(tomograms);
        double worst = 0.0;
        for (std::size_t i = 0; i < recon.q.points; ++i)
            for (std::size_t j = 0; j < recon.p.points; ++j)
                worst = std::max(worst, std::abs(recon.at(i, j) - g(recon.q.at(i), recon.p.at(j))));
        const Tomogram position = forward_tomogram(g, {1.0, 0.0}, default_x_grid(g, {1.0, 0.0}));
        results = {{"state", "gaussian"},
                   {"reconstruction_integral", round_significant(recon.integral())},
                   {"max_abs_error", round_significant(worst)},
                   {"peak_value", round_significant(g(c.q0, c.p0))},
                   {"mean_position", round_significant(tomogram_mean_position(position))}};
        if (c.format == OutputFormat::Json) ctx.add("reconstruction.json", dump(to_json(recon)));
    }
    double worst_mass = 0.0;
    for (const auto& t : tomograms) worst_mass = std::max(worst_mass, std::abs(t.integral() - 1.0));
    results["directions"] = tomograms.size();
    results["max_tomogram_mass_error"] = round_significant(worst_mass);
    if (c.format == OutputFormat::Csv) {
        ctx.add("tomogram.csv", tomogram_csv(tomograms.front()));
    } else {
        Json all = Json::array();
        for (const auto& t : tomograms) all.push_back(to_json(t));
        ctx.add("tomograms.json", dump(all));
    }
    return results;
}

Json harmonic(Context& ctx) {
    const auto& c = ctx.config;
    const int n = effective_steps(c);
    const DerivativeSeries series = harmonic_derivative_series(c.z, n, c.v1, c.v2);
    const ExponentEstimate e = estimate_exponent(series, estimator_for(n));
    const auto running = running_estimate(series);
    ctx.add_series(series, running);
    const ReportRow row = harmonic_row(c, e);
    ctx.add_report({row});
    return {{"floquet", harmonic_floquet_report(c.z)},
            {"estimate", to_json(e)},
            {"running", running_summary(running)},
            {"row", row_json(row)}};
}

Json cat(Context& ctx) {
    const auto& c = ctx.config;
    const QuadraticModel model = build_cat_model(c.variant);
    const FloquetMatrix lambda = floquet_lambda(model, 1);
    Json report = floquet_report(c.variant);
    report["symplectic_defect"] = round_significant(symplectic_defect(lambda.lambda));
    const ReportRow row = cat_row(c);
    if (c.format == OutputFormat::Json) ctx.add("floquet.json", dump(report));
    ctx.add_report({row});
    return {{"floquet", report}, {"row", row_json(row)}};
}

Json standard_map(Context& ctx, std::vector<std::string>& warnings) {
    const auto& c = ctx.config;
    const int n = effective_steps(c);
    const StandardMapParams params = params_of(c, c.hbar);
    if (resonant_hbar_tau(params))
        warnings.push_back("hbar tau / (4 pi) is close to a rational; the quantum lattice may resonate");
    RunOptions options;
    options.estimator = estimator_for(n);
    const StandardMapRun run = run_standard_map(params, n, options);
    ctx.add_series(run.series, run.running);
    Json results = {{"params", to_json(params)},
                    {"steps", n},
                    {"arithmetic", run.arithmetic == LatticeArithmetic::Quad ? "quad" : "double"},
                    {"exact", run.exact},
                    {"estimate", to_json(run.estimate)},
                    {"running", running_summary(run.running)}};
    if (n > 20) {
        results["probe_trend"] = round_significant(
            probe_linear_trend(run.probes, 20, static_cast<std::size_t>(n)));
    }
    const auto closed = standard_closed_form(c);
    const double oracle =
        tangent_map_lyapunov(standard_map_spec(c.gamma, c.tau, c.q0, c.p0), oracle_steps(c));
    ReportRow row{standard_label(c.gamma), std::nullopt, std::nullopt, oracle, closed};
    (c.hbar > 0.0 ? row.quantum : row.classical) = run.estimate.slope;
    ctx.add_report({row});
    results["row"] = row_json(row);
    return results;
}

KickedMapSpec oracle_spec(const ExperimentConfig& c) {
    if (c.map == "harmonic") return harmonic_kick_spec(c.z, c.q0, c.p0);
    if (c.map == "cat") return cat_map_spec(c.variant);
    return standard_map_spec(c.gamma, c.tau, c.q0, c.p0);
}

Json oracle(Context& ctx) {
    const auto& c = ctx.config;
    const int n = effective_steps(c);
    const KickedMapSpec spec = oracle_spec(c);
    const double lambda = tangent_map_lyapunov(spec, n);
    const std::vector<OracleRow> rows{{describe(spec), n, lambda}};
    if (c.format == OutputFormat::Csv)
        ctx.add("oracle.csv", oracle_csv(rows));
    else
        ctx.add("oracle.json", dump(Json{{"spec", describe(spec)},
                                         {"n_steps", n},
                                         {"lambda", round_significant(lambda)}}));
    Json results = {{"spec", describe(spec)}, {"n_steps", n}, {"lambda", round_significant(lambda)}};
    try {
        results["monodromy"] = matrix_to_json(monodromy_at_fixed_point(spec));
    } catch (const ValidationError&) {
        results["monodromy"] = nullptr;
    }
    return results;
}

Json compare(Context& ctx) {
    const auto& c = ctx.config;
    const int n = effective_steps(c);
    std::vector<ReportRow> rows;

    const DerivativeSeries hs = harmonic_derivative_series(c.z, n, c.v1, c.v2);
    rows.push_back(harmonic_row(c, estimate_exponent(hs, estimator_for(n))));
    rows.push_back(cat_row(c));

    RunOptions options;
    options.estimator = estimator_for(n);
    const StandardMapRun classical = run_standard_map(params_of(c, 0.0), n, options);
    const StandardMapRun quantum = run_standard_map(params_of(c, c.hbar), n, options);
    const double oracle = tangent_map_lyapunov(standard_map_spec(c.gamma, c.tau, c.q0, c.p0), 10000);
    rows.push_back({standard_label(c.gamma), classical.estimate.slope, quantum.estimate.slope, oracle,
                    standard_closed_form(c)});

    ctx.add_report(rows);
    Json table = Json::array();
    for (const auto& r : rows) table.push_back(row_json(r));
    return {{"rows", table}};
}

}  // namespace

std::vector<fs::path> emit_report(const std::vector<ReportRow>& rows, const fs::path& out,
                                  OutputFormat format) {
    if (rows.empty()) throw ValidationError("report has no rows");
    if (format == OutputFormat::Csv) {
        std::ostringstream os;
        os << "system,classical,quantum,oracle,closed_form\n";
        for (const auto& r : rows)
            os << r.system << ',' << csv_cell(r.classical) << ',' << csv_cell(r.quantum) << ','
               << csv_cell(r.oracle) << ',' << csv_cell(r.closed_form) << '\n';
        return {write_file(out, "report.csv", os.str())};
    }
    Json table = Json::array();
    for (const auto& r : rows) table.push_back(row_json(r));
    return {write_file(out, "report.json", dump(Json{{"rows", table}}))};
}

RunOutcome run_experiment(const ExperimentConfig& config) {
    validate_config(config);
    ensure_directory(config.out);
    RunOutcome outcome;
    Context ctx{config, outcome};
    std::vector<std::string> warnings;
    Json results;
    switch (config.kind) {
        case ExperimentKind::Tomography: results = tomography(ctx); break;
        case ExperimentKind::Harmonic: results = harmonic(ctx); break;
        case ExperimentKind::Cat: results = cat(ctx); break;
        case ExperimentKind::StandardMap: results = standard_map(ctx, warnings); break;
        case ExperimentKind::Oracle: results = oracle(ctx); break;
        case ExperimentKind::Compare: results = compare(ctx); break;
    }
    Json artifacts = Json::array();
    for (const auto& f : outcome.files) artifacts.push_back(f.filename().generic_string());
    artifacts.push_back("record.json");
    outcome.record = {{"tool", "tomolyap"},
                      {"version", kVersion},
                      {"experiment", to_string(config.kind)},
                      {"config", config_to_json(config)},
                      {"warnings", warnings},
                      {"results", results},
                      {"artifacts", artifacts}};
    outcome.files.push_back(write_file(config.out, "record.json", dump(outcome.record)));
    return outcome;
}

Json error_json(const std::string& kind, const std::string& message) {
    return {{"error", {{"kind", kind}, {"message", message}}}};
}

int run_guarded(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const RunOutcome outcome = run_experiment(config);
        for (const auto& w : outcome.record["warnings"]) err << "warning: " << w.get<std::string>() << "\n";
        for (const auto& f : outcome.files) out << f.generic_string() << "\n";
        return 0;
    } catch (const ConfigError& e) {
        err << error_json("config", e.what()).dump() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << error_json(e.kind(), e.what()).dump() << "\n";
        return 2;
    } catch (const Error& e) {
        err << error_json(e.kind(), e.what()).dump() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << error_json("internal", e.what()).dump() << "\n";
        return 3;
    }
}

}  // namespace tomolyap::cli
