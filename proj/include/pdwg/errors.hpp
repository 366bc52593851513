#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pdwg {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid user input or inconsistent configuration (bad degree, n0 not
/// compatible with an interface, unknown problem id, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// The mesh does not resolve an interface: some edge crosses it.
class AlignmentError : public ConfigError {
public:
    using ConfigError::ConfigError;
};

/// Structurally or numerically singular linear system.
class SingularMatrixError : public Error {
public:
    using Error::Error;
};

/// Picard iteration did not reach the requested tolerance.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, std::vector<double> history)
        : Error(what), history_(std::move(history)) {}

    /// Relative change per iteration, in order.
    const std::vector<double>& history() const noexcept { return history_; }

private:
    std::vector<double> history_;
};

} // namespace pdwg
