#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "scalar.hpp"

namespace impdiff {

// Bivariate expression AST. Grammar (whitespace insignificant):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | atom ('^' nat)?
//   atom   := number | 'x' | 'y' | func '(' expr ')' | '(' expr ')'
//   func   := 'sin'|'cos'|'exp'|'log'|'sqrt'
//   number := nat | nat '.' digits
// Rational constants are written as integer quotients ("1/3"), which parse as
// division and fold to an exact rational. Implicit multiplication ("2x") is
// a syntax error. Exponents are non-negative integers.

enum class NodeKind { Constant, VarX, VarY, Add, Sub, Mul, Div, Neg, Pow, Fun };
enum class FunKind { Sin, Cos, Exp, Log, Sqrt };

enum class Var { X, Y };

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
 public:
  NodeKind kind;
  Scalar value;       // Constant
  FunKind fun{};      // Fun
  int exponent = 0;   // Pow
  ExprPtr lhs, rhs;   // children (unary ops use lhs)

  static ExprPtr constant(Scalar v);
  static ExprPtr variable(Var v);
  static ExprPtr add(ExprPtr a, ExprPtr b);
  static ExprPtr sub(ExprPtr a, ExprPtr b);
  static ExprPtr mul(ExprPtr a, ExprPtr b);
  static ExprPtr div(ExprPtr a, ExprPtr b);
  static ExprPtr neg(ExprPtr a);
  static ExprPtr pow(ExprPtr base, int exponent);
  static ExprPtr call(FunKind f, ExprPtr arg);
};

// Throws Error(Syntax) with the byte offset of the offending token.
ExprPtr parse_expr(std::string_view text);

Scalar eval(const Expr& e, const Scalar& x, const Scalar& y, Mode mode);

// Formal partial derivative; no simplification beyond constant folding.
ExprPtr diff(const ExprPtr& e, Var var);

std::string print_expr(const Expr& e);

// Transcendental call or decimal literal anywhere in the tree.
bool requires_float(const Expr& e);

bool contains_var(const Expr& e, Var var);

}  // namespace impdiff
