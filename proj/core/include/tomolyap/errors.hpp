#pragma once

#include <stdexcept>
#include <string>

namespace tomolyap {

/// Base of every error raised by the library. `kind()` is a stable short tag
/// used in structured (JSON) error reports.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

/// Input violates a documented precondition (normalization, symmetry, ranges).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error("validation", what) {}
};

/// Tomographic direction (mu, nu) is the zero vector or otherwise illegal.
class InvalidDirectionError : public Error {
public:
    explicit InvalidDirectionError(const std::string& what) : Error("invalid-direction", what) {}
};

/// Direction is legal but the chosen formula cannot evaluate it (nu = 0 for pure states).
class UnsupportedDirectionError : public Error {
public:
    explicit UnsupportedDirectionError(const std::string& what)
        : Error("unsupported-direction", what) {}
};

class InsufficientDataError : public Error {
public:
    explicit InsufficientDataError(const std::string& what) : Error("insufficient-data", what) {}
};

/// A lattice read fell outside the stored dependency cone.
class ConeError : public Error {
public:
    explicit ConeError(const std::string& what) : Error("cone", what) {}
};

/// Requested work exceeds a configured memory or term budget.
class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error("resource", what) {}
};

/// Non-finite values, singular matrices and similar numerical breakdowns.
class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error("numerical", what) {}
};

/// All norms in a fitting window are zero.
class DegenerateSeriesError : public Error {
public:
    explicit DegenerateSeriesError(const std::string& what) : Error("degenerate-series", what) {}
};

}  // namespace tomolyap
