#pragma once

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "conequant/weyl.hpp"

namespace conequant {

/// Syntax or symbol error; position is the 0-based offset into the input.
class ParseError : public std::invalid_argument {
public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Operator expression AST.
///
/// Grammar:
///   expr  := term (('+' | '-') term)*
///   term  := unary ('*' unary | '/' NUMBER)*
///   unary := '-' unary | power
///   power := atom ('^' INT)?
///   atom  := NUMBER | 'i' | 'z' INT | 'd' INT | '(' expr ')' | '[' expr ',' expr ']'
/// NUMBER is a decimal literal (digits with an optional fractional part),
/// read exactly as a rational.
struct Expr {
  enum class Kind { number, imaginary_unit, coordinate, derivative, negate, add, subtract, multiply, divide, power,
                    bracket };
  Kind kind;
  std::size_t position = 0;
  Scalar value;           // number
  std::size_t index = 0;  // coordinate / derivative, 0-based
  int exponent = 0;       // power
  std::vector<ExprPtr> children;
};

/// Parses text for ambient dimension n; variable indices must lie in 1..n.
ExprPtr parse_expr(const std::string& text, std::size_t n);
/// Evaluates the AST in the Weyl algebra of dimension n.
WeylElement elaborate(const Expr& e, std::size_t n);
/// parse_expr followed by elaborate.
WeylElement parse_operator(const std::string& text, std::size_t n);

/// Normal-form text: terms by total degree (z and d together) descending,
/// then by exponent vectors (z first, then d) descending. "0" for zero.
std::string format_expr(const WeylElement& e);

}  // namespace conequant
