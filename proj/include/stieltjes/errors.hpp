#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace stieltjes {

/// Argument outside the domain [0,T].
class DomainError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// A required analytic derivative is missing.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed or unsupported configuration.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Failure that is located at a specific abscissa, when one is known.
class LocatedError : public std::runtime_error {
public:
    explicit LocatedError(const std::string& what, std::optional<double> at = std::nullopt)
        : std::runtime_error(what), abscissa_(at) {}
    std::optional<double> abscissa() const { return abscissa_; }

private:
    std::optional<double> abscissa_;
};

/// Numerical breakdown: non-finite samples, undefined derivatives.
class NumericError : public LocatedError {
public:
    using LocatedError::LocatedError;
};

class IntegrationError : public NumericError {
public:
    using NumericError::NumericError;
};

class DerivativeError : public NumericError {
public:
    using NumericError::NumericError;
};

/// A mathematical hypothesis of an operation does not hold.
class PreconditionError : public LocatedError {
public:
    using LocatedError::LocatedError;
};

class RegressivityError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

class SingularSystemError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

std::string format_abscissa(double t);

}  // namespace stieltjes
