#pragma once

// Growth-rate extraction from a derivative time series.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tomolyap/derivative_series.hpp"

namespace tomolyap {

enum class Classification { Zero, Positive, Negative };

std::string to_string(Classification c);

/// Inclusive index range [lo, hi] of the fit.
struct FitWindow {
    std::size_t lo = 0;
    std::size_t hi = 0;
};

/// Regression of ln ||(G2, G3)||.
///  - PowerCorrected: on [1, t, ln(1 + t)]; the t-coefficient is the exponent and
///    polynomial prefactors are absorbed by the log term.
///  - Exponential: on [1, t] only.
enum class GrowthModel { PowerCorrected, Exponential };

struct ExponentEstimate {
    double slope = 0.0;
    double intercept = 0.0;
    double std_error = 0.0;
    FitWindow window;
    Classification classification = Classification::Zero;
};

struct EstimatorOptions {
    std::optional<FitWindow> window;  ///< default: last half of the series
    GrowthModel model = GrowthModel::PowerCorrected;
    double zero_threshold = 0.02;
    double stderr_multiple = 3.0;
    std::size_t min_length = 16;
};

ExponentEstimate estimate_exponent(const DerivativeSeries& series, const EstimatorOptions& options = {});

/// Same fit on precomputed norms, t = index.
ExponentEstimate estimate_exponent_from_norms(std::span<const double> norms,
                                              const EstimatorOptions& options = {});

struct RunningPoint {
    std::size_t t;
    double lambda;
};

/// lambda(t) = ln(||.||(t) / ||.||(t0)) / (t - t0) for t > t0. The default t0
/// is floor((size - 1) / 10).
std::vector<RunningPoint> running_estimate(std::span<const double> norms,
                                           std::optional<std::size_t> t0 = std::nullopt);
std::vector<RunningPoint> running_estimate(const DerivativeSeries& series,
                                           std::optional<std::size_t> t0 = std::nullopt);

/// Over the last `fraction` of the points: the least-squares trend of |lambda|
/// is not positive and the final |lambda| does not exceed the first.
bool tail_decreasing(std::span<const RunningPoint> points, double fraction = 0.5,
                     double slack = 1e-12);

}  // namespace tomolyap
