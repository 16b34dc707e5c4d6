#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace frackac {

/// Base of every error thrown by the library. `code()` is a stable
/// machine-readable tag used by the CLI when reporting failures.
class Error : public std::runtime_error {
public:
    Error(std::string_view code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    std::string_view code() const noexcept { return code_; }

private:
    std::string_view code_;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error("domain", what) {}
};

/// Iterative method failed to converge or produced a non-finite value.
class NumericError : public Error {
public:
    explicit NumericError(const std::string& what) : Error("numeric", what) {}
};

/// Caller violated a precondition (dimension mismatch, point outside Ω, ...).
class UsageError : public Error {
public:
    explicit UsageError(const std::string& what) : Error("usage", what) {}
};

/// Invalid or inconsistent configuration.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error("config", what) {}
};

/// A simulated trajectory exceeded its step budget.
class TrajectoryError : public Error {
public:
    explicit TrajectoryError(const std::string& what) : Error("trajectory", what) {}
};

/// Post-processing (fits, tables) could not be carried out.
class AnalysisError : public Error {
public:
    explicit AnalysisError(const std::string& what) : Error("analysis", what) {}
};

}  // namespace frackac
