#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "config.hpp"
#include "tomolyap/errors.hpp"

namespace tomolyap::cli {

/// Output directory cannot be created or written.
class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error("io", what) {}
};

/// One row of the comparison table; absent entries are written as null / empty.
struct ReportRow {
    std::string system;
    std::optional<double> classical;
    std::optional<double> quantum;
    std::optional<double> oracle;
    std::optional<double> closed_form;
};

/// Writes report.csv or report.json into `out`. Throws ValidationError on an
/// empty row set and IoError when the directory is unusable.
std::vector<std::filesystem::path> emit_report(const std::vector<ReportRow>& rows,
                                               const std::filesystem::path& out,
                                               OutputFormat format);

struct RunOutcome {
    int exit_code = 0;
    std::vector<std::filesystem::path> files;
    Json record;
};

/// Runs the experiment and writes its artifacts. Library errors propagate.
RunOutcome run_experiment(const ExperimentConfig& config);

/// Exit codes: 0 success, 2 configuration error, 3 runtime (numerical, resource, I/O) error.
/// Error details go to `err` as a JSON object.
int run_guarded(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

/// Structured error body {"error": {"kind", "message"}}.
Json error_json(const std::string& kind, const std::string& message);

}  // namespace tomolyap::cli
