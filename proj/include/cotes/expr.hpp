#pragma once

#include "cotes/bigreal.hpp"

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cotes {

/// Extra decimal digits every evaluation carries on top of the requested
/// working precision.
inline constexpr int kGuardDigits = 10;

inline int guarded_digits(int working_digits) { return working_digits + kGuardDigits; }

/// Raised when a node is evaluated outside its domain, or where its first or
/// second derivative does not exist.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Value together with first and second derivative at one point.
struct Jet2 {
  BigReal f;
  BigReal d1;
  BigReal d2;
};

/// Immutable expression tree in one real variable `x`.
class Expression {
 public:
  enum class Op { number, variable, pi, e, negate, add, sub, mul, div, pow, call };
  enum class Func { sin, cos, tan, tanh, exp, log, sqrt, cbrt, abs };

  struct Node {
    Op op = Op::number;
    Func func = Func::sin;
    std::string literal;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
    bool depends_on_x = false;
  };

  /// Grammar:
  ///   expr  := term (("+"|"-") term)*
  ///   term  := unary (("*"|"/") unary)*
  ///   unary := "-" unary | power
  ///   power := atom ("^" unary)?          right associative
  ///   atom  := number | "x" | "pi" | "e" | ident "(" expr ")" | "(" expr ")"
  static Expression parse(std::string_view text);

  static Expression number(std::string literal);
  static Expression variable();
  static Expression constant(Op which);
  static Expression negate(const Expression& operand);
  static Expression binary(Op op, const Expression& lhs, const Expression& rhs);
  static Expression call(Func func, const Expression& arg);

  /// Value and derivatives at x, computed at `digits` + kGuardDigits.
  Jet2 eval_jet(const BigReal& x, int digits) const;
  /// Value alone. Unlike eval_jet this accepts points where only a
  /// derivative is undefined, e.g. cbrt at 0.
  BigReal eval(const BigReal& x, int digits) const;

  /// Canonical prefix form, e.g. "tanh(sub(x, 1))".
  std::string to_string() const;
  const Node& root() const { return *root_; }

 private:
  explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

inline Expression parse(std::string_view text) { return Expression::parse(text); }

inline Jet2 eval_jet(const Expression& expr, const BigReal& x, int digits) {
  return expr.eval_jet(x, digits);
}

std::string_view function_name(Expression::Func func);

}  // namespace cotes
