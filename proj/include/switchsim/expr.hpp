#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "switchsim/errors.hpp"

namespace switchsim {

/// Default relative step for finite-difference gradients. The effective step
/// for coordinate i is step * max(1, |x_i|).
inline constexpr double kGradientStep = 1e-6;

/// A parsed scalar expression over state variables x1..xn.
///
/// Expressions are immutable after parsing and evaluation is reentrant, so a
/// single instance can be shared freely across worker threads. Copies share
/// the underlying syntax tree.
class Expression {
public:
    /// Constant zero over a zero-dimensional state. Placeholder value only.
    Expression();

    double evaluate(std::span<const double> point) const;

    /// Central finite differences, coordinate step = step * max(1, |x_i|).
    std::vector<double> gradient(std::span<const double> point,
                                 double step = kGradientStep) const;

    /// Fully parenthesized form; re-parsing it yields an equivalent tree.
    std::string to_string() const;

    int dimension() const { return dimension_; }

    struct Node;

private:
    friend Expression parse_expression(std::string_view, int);
    Expression(std::shared_ptr<const Node> root, int dimension);

    std::shared_ptr<const Node> root_;
    int dimension_ = 0;
};

/// Parses `source` over variables x1..x{dimension}.
///
/// Grammar: + - * / ^ with standard precedence, ^ binds tightest and is
/// right-associative, then unary minus, then * /, then + -. Functions:
/// sin cos exp log sqrt tanh abs and two-argument min max.
///
/// Throws ParseError (with position) on syntax errors, unknown identifiers
/// and variable indices outside 1..dimension.
Expression parse_expression(std::string_view source, int dimension);

}  // namespace switchsim
