#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace switchsim {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Syntax error while parsing an expression; carries the byte offset.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position)
        : Error(message + " (at position " + std::to_string(position) + ")"),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Domain error during expression evaluation (log of nonpositive,
/// division by zero, ...); carries the offending sub-expression.
class EvalError : public Error {
public:
    EvalError(const std::string& message, std::string subexpression)
        : Error(message + " in '" + subexpression + "'"),
          subexpression_(std::move(subexpression)) {}

    const std::string& subexpression() const { return subexpression_; }

private:
    std::string subexpression_;
};

/// Invalid scenario configuration (bad matrices, mismatched dimensions, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace switchsim
