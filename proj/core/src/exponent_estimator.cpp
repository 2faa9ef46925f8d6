#include "tomolyap/exponent_estimator.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "tomolyap/errors.hpp"

namespace tomolyap {

double DerivativeSeries::norm(std::size_t t) const {
    const double a = std::abs(g2.at(t));
    const double b = std::abs(g3.at(t));
    return std::hypot(a, b);
}

std::vector<double> DerivativeSeries::norms() const {
    if (g2.size() != g3.size()) throw ValidationError("G2 and G3 series differ in length");
    std::vector<double> out(size());
    for (std::size_t t = 0; t < out.size(); ++t) out[t] = norm(t);
    return out;
}

std::string to_string(Classification c) {
    switch (c) {
        case Classification::Zero: return "zero";
        case Classification::Positive: return "positive";
        case Classification::Negative: return "negative";
    }
    return "unknown";
}

ExponentEstimate estimate_exponent(const DerivativeSeries& series, const EstimatorOptions& options) {
    const auto n = series.norms();
    return estimate_exponent_from_norms(n, options);
}

ExponentEstimate estimate_exponent_from_norms(std::span<const double> norms,
                                              const EstimatorOptions& options) {
    if (norms.size() < options.min_length) {
        throw ValidationError("series too short for an exponent fit: " +
                              std::to_string(norms.size()) + " < " +
                              std::to_string(options.min_length));
    }
    const FitWindow w = options.window.value_or(FitWindow{norms.size() / 2, norms.size() - 1});
    if (w.lo >= w.hi || w.hi >= norms.size())
        throw ValidationError("fit window must satisfy lo < hi < series length");

    const bool corrected = options.model == GrowthModel::PowerCorrected;
    const Eigen::Index params = corrected ? 3 : 2;
    const auto m = static_cast<Eigen::Index>(w.hi - w.lo + 1);
    if (m <= params) throw ValidationError("fit window has too few points for the growth model");

    bool any_nonzero = false;
    for (std::size_t t = w.lo; t <= w.hi; ++t) {
        if (!std::isfinite(norms[t])) throw NumericalError("non-finite norm in fit window");
        if (norms[t] > 0.0) any_nonzero = true;
    }
    if (!any_nonzero) throw DegenerateSeriesError("all norms in the fit window are zero");
    for (std::size_t t = w.lo; t <= w.hi; ++t) {
        if (norms[t] <= 0.0)
            throw DegenerateSeriesError("zero norm at t = " + std::to_string(t) + " in fit window");
    }

    Eigen::MatrixXd x(m, params);
    Eigen::VectorXd y(m);
    const double t_mid = 0.5 * static_cast<double>(w.lo + w.hi);
    double log_mid = 0.0;
    if (corrected) {
        for (Eigen::Index i = 0; i < m; ++i) log_mid += std::log1p(static_cast<double>(w.lo) + i);
        log_mid /= static_cast<double>(m);
    }
    for (Eigen::Index i = 0; i < m; ++i) {
        const double t = static_cast<double>(w.lo) + static_cast<double>(i);
        x(i, 0) = 1.0;
        x(i, 1) = t - t_mid;
        if (corrected) x(i, 2) = std::log1p(t) - log_mid;
        y(i) = std::log(norms[w.lo + static_cast<std::size_t>(i)]);
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    if (qr.rank() < params) throw NumericalError("singular regression design");
    const Eigen::VectorXd coef = qr.solve(y);
    const Eigen::VectorXd resid = y - x * coef;
    const double sigma2 = resid.squaredNorm() / static_cast<double>(m - params);
    const Eigen::MatrixXd xtx_inv = (x.transpose() * x).inverse();

    ExponentEstimate e;
    e.slope = coef(1);
    e.intercept = coef(0) - coef(1) * t_mid - (corrected ? coef(2) * log_mid : 0.0);
    e.std_error = std::sqrt(std::max(0.0, sigma2 * xtx_inv(1, 1)));
    e.window = w;
    if (!std::isfinite(e.slope) || !std::isfinite(e.std_error))
        throw NumericalError("exponent fit produced non-finite values");
    const double threshold = std::max(options.stderr_multiple * e.std_error, options.zero_threshold);
    if (std::abs(e.slope) < threshold)
        e.classification = Classification::Zero;
    else
        e.classification = e.slope > 0.0 ? Classification::Positive : Classification::Negative;
    return e;
}

std::vector<RunningPoint> running_estimate(std::span<const double> norms,
                                           std::optional<std::size_t> t0) {
    if (norms.size() < 4) throw ValidationError("running estimate needs at least 4 points");
    const std::size_t start = t0.value_or((norms.size() - 1) / 10);
    if (start + 1 >= norms.size()) throw ValidationError("reference time t0 is past the series end");
    const double ref = norms[start];
    if (!(ref > 0.0) || !std::isfinite(ref))
        throw DegenerateSeriesError("norm at reference time t0 = " + std::to_string(start) +
                                    " is zero");
    std::vector<RunningPoint> out;
    out.reserve(norms.size() - start - 1);
    for (std::size_t t = start + 1; t < norms.size(); ++t) {
        if (!(norms[t] > 0.0)) throw DegenerateSeriesError("zero norm at t = " + std::to_string(t));
        out.push_back({t, std::log(norms[t] / ref) / static_cast<double>(t - start)});
    }
    return out;
}

std::vector<RunningPoint> running_estimate(const DerivativeSeries& series,
                                           std::optional<std::size_t> t0) {
    const auto n = series.norms();
    return running_estimate(n, t0);
}

bool tail_decreasing(std::span<const RunningPoint> points, double fraction, double slack) {
    if (points.size() < 2) return false;
    if (!(fraction > 0.0 && fraction <= 1.0)) throw ValidationError("fraction must be in (0, 1]");
    const auto count = std::max<std::size_t>(
        2, static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(points.size()))));
    const auto tail = points.subspan(points.size() - std::min(count, points.size()));
    double st = 0.0, sa = 0.0;
    for (const auto& p : tail) {
        st += static_cast<double>(p.t);
        sa += std::abs(p.lambda);
    }
    const double k = static_cast<double>(tail.size());
    st /= k;
    sa /= k;
    double num = 0.0, den = 0.0;
    for (const auto& p : tail) {
        const double dt = static_cast<double>(p.t) - st;
        num += dt * (std::abs(p.lambda) - sa);
        den += dt * dt;
    }
    const double trend = num / den;
    return trend <= slack && std::abs(tail.back().lambda) <= std::abs(tail.front().lambda) + slack;
}

}  // namespace tomolyap
