#pragma once

#include <stdexcept>
#include <string>

namespace skewlab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operands with incompatible dimensions.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A value lies outside the domain of a function or matrix type
/// (eigenvalue below a floor, non-Hermitian input, non-unit trace, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Iterative eigensolver exhausted its sweep budget.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Malformed or inconsistent configuration document.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace skewlab
