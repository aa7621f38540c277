#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace pipegate {

// Base for every error the library raises on bad input.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A value outside the mathematical domain of an operation (e.g. prevalence not in (0,1)).
class DomainError : public Error {
public:
    using Error::Error;
};

// Precision is undefined because the classifier passes nothing.
class UndefinedPrecisionError : public DomainError {
public:
    using DomainError::DomainError;
};

// A named field of a record failed its range or presence check.
class ValidationError : public Error {
public:
    ValidationError(std::string field, std::string message)
        : Error(field + ": " + message), field_(std::move(field)), detail_(std::move(message)) {}

    const std::string& field() const noexcept { return field_; }
    // The message without the field prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string field_;
    std::string detail_;
};

// Malformed input document. Line and column are 1-based; 0 when unknown.
class ParseError : public Error {
public:
    ParseError(std::string origin, std::size_t line, std::size_t column, const std::string& message)
        : Error(origin + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          origin_(std::move(origin)),
          line_(line),
          column_(column) {}

    const std::string& origin() const noexcept { return origin_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string origin_;
    std::size_t line_;
    std::size_t column_;
};

class DuplicateNameError : public Error {
public:
    using Error::Error;
};

// Lookup of a model or benchmark that does not exist.
class UnknownEntityError : public Error {
public:
    using Error::Error;
};

// An operation needs a screener latency that the record does not carry.
class LatencyUnknownError : public Error {
public:
    using Error::Error;
};

}  // namespace pipegate
