#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace hob {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input violates a documented precondition. `field()` names the offending
/// input when one can be identified (empty otherwise).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& message, std::string field = {})
        : Error(message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// A well-posed numerical procedure could not deliver a result.
class NumericalError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class TimeAfterFirstExpiry : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NonIncreasingExpiries : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class MissingDate : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class NotPositiveDefinite : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NonConvergent : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class RootNotBracketed : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ExtensionNeverOptimal : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace hob
