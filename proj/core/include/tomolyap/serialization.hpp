#pragma once

// CSV and JSON encodings shared by the CLI. Floats are written with 12
// significant digits so that reports are byte-stable.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "tomolyap/classical_oracle.hpp"
#include "tomolyap/exponent_estimator.hpp"
#include "tomolyap/quadratic_floquet.hpp"
#include "tomolyap/standard_map.hpp"
#include "tomolyap/tomography.hpp"

namespace tomolyap {

using Json = nlohmann::ordered_json;

inline constexpr int kSignificantDigits = 12;

/// printf("%.12g"), with -0 printed as 0.
std::string format_number(double v);
/// v rounded to 12 significant digits.
double round_significant(double v);

Json to_json(const GridSpec& grid);
GridSpec grid_from_json(const Json& j);

Json to_json(const Tomogram& tomogram);
Tomogram tomogram_from_json(const Json& j);
/// Columns X, w.
std::string tomogram_csv(const Tomogram& tomogram);

Json to_json(const DensityGrid& grid);
Json to_json(const WignerGrid& grid);

Json to_json(const ExponentEstimate& estimate);
Json to_json(const StandardMapParams& params);
Json complex_to_json(std::complex<double> z);
Json matrix_to_json(const Eigen::MatrixXd& m);

/// Columns t, Re G2, Im G2, Re G3, Im G3, |G(1,1,tau,t)|, log-norm.
std::string series_csv(const DerivativeSeries& series);
/// Columns t, lambda.
std::string running_csv(std::span<const RunningPoint> points);

/// {system, variant or z, floquet_matrix, eigenvalues, lyapunov}.
Json floquet_report(CatVariant variant);
Json harmonic_floquet_report(double z);

struct OracleRow {
    std::string spec;
    int n_steps = 0;
    double lambda = 0.0;
};
/// Columns spec, n_steps, lambda.
std::string oracle_csv(std::span<const OracleRow> rows);

}  // namespace tomolyap
