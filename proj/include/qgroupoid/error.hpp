#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qgroupoid {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value or structure violates a documented invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Text input could not be parsed. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line = 0, std::size_t column = 0)
        : Error(line == 0 ? message
                          : "line " + std::to_string(line) + ", column " + std::to_string(column) +
                                ": " + message),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Two transitions were composed whose endpoints do not match.
class NotComposableError : public Error {
public:
    using Error::Error;
};

/// Operands live on different groupoids.
class GroupoidMismatchError : public Error {
public:
    using Error::Error;
};

/// An exhaustive enumeration would exceed its configured size cap.
class CapExceededError : public Error {
public:
    CapExceededError(const std::string& message, double required)
        : Error(message), required_(required) {}

    double required() const noexcept { return required_; }

private:
    double required_;
};

}  // namespace qgroupoid
