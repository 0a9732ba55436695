#pragma once

#include <stdexcept>
#include <string>

namespace reqlab {

/// Base class for every error raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// A file or provider response could not be parsed.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Parsed data violates a structural invariant (duplicate id, dangling
/// reference, unknown enum value, inconsistent counts).
class IntegrityError : public Error {
public:
    using Error::Error;
};

/// Invalid configuration or argument values.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Provider transport failure (connection refused, HTTP 5xx, timeout).
/// Retryable.
class TransportError : public Error {
public:
    using Error::Error;
};

/// Call or spend cap reached. Not retryable.
class BudgetExceededError : public Error {
public:
    using Error::Error;
};

}  // namespace reqlab
