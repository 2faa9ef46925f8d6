#pragma once

// Experiment configuration: a key = value text file plus flag overrides.

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tomolyap/quadratic_floquet.hpp"
#include "tomolyap/serialization.hpp"

namespace tomolyap::cli {

/// Invalid configuration; exit status 2. The message carries the origin
/// ("file:line" or "--flag") when known.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class ExperimentKind { Tomography, Harmonic, Cat, StandardMap, Oracle, Compare };

std::string to_string(ExperimentKind kind);
/// Accepts "standard-map" and "standard_map".
ExperimentKind parse_kind(const std::string& text);

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::Harmonic;
    std::filesystem::path out = "out";
    OutputFormat format = OutputFormat::Json;
    int n = 0;  ///< 0 selects the experiment default
    unsigned seed = 12345;

    double gamma = 1.0;
    double hbar = 0.0;
    double tau = 1.0;
    double q0 = 0.0;
    double p0 = 0.0;
    double v1 = 1.0;
    double v2 = 1.0;
    double z = 5.0;
    CatVariant variant = CatVariant::KickOnly;

    /// Tomography: "gaussian" (classical density) or "coherent" (pure state).
    std::string state = "gaussian";
    double sigma_q = 1.0;
    double sigma_p = 1.0;
    double correlation = 0.0;
    int directions = 64;

    /// Oracle: "standard_map", "harmonic" or "cat".
    std::string map = "standard_map";

    bool operator==(const ExperimentConfig&) const = default;
};

/// Periods / steps used when n = 0.
int effective_steps(const ExperimentConfig& config);

/// A raw setting and where it came from.
struct Setting {
    std::string value;
    std::string origin;
};
using Settings = std::map<std::string, Setting>;

/// Every key accepted in files and as --flag.
const std::vector<std::string>& known_keys();

/// Parses `key = value` lines; '#' starts a comment. Errors name file and line.
Settings parse_config_text(const std::string& text, const std::string& origin);
Settings read_config_file(const std::filesystem::path& path);

/// Applies `settings` on top of the defaults for `kind` and validates the result.
ExperimentConfig build_config(ExperimentKind kind, const Settings& settings);

/// Throws ConfigError when the configuration violates a module precondition.
void validate_config(const ExperimentConfig& config);

/// Echo of every key, in a fixed order.
Json config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const Json& j);

}  // namespace tomolyap::cli
