#include "expr.hpp"

#include <cctype>
#include <cmath>
#include <vector>

namespace impdiff {

namespace {

std::shared_ptr<Expr> make(NodeKind k) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  return e;
}

bool is_const(const ExprPtr& e) { return e->kind == NodeKind::Constant; }

}  // namespace

ExprPtr Expr::constant(Scalar v) {
  auto e = make(NodeKind::Constant);
  e->value = std::move(v);
  return e;
}

ExprPtr Expr::variable(Var v) { return make(v == Var::X ? NodeKind::VarX : NodeKind::VarY); }

ExprPtr Expr::add(ExprPtr a, ExprPtr b) {
  if (is_const(a) && is_const(b)) return constant(a->value + b->value);
  auto e = make(NodeKind::Add);
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

ExprPtr Expr::sub(ExprPtr a, ExprPtr b) {
  if (is_const(a) && is_const(b)) return constant(a->value - b->value);
  auto e = make(NodeKind::Sub);
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

ExprPtr Expr::mul(ExprPtr a, ExprPtr b) {
  if (is_const(a) && is_const(b)) return constant(a->value * b->value);
  auto e = make(NodeKind::Mul);
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

ExprPtr Expr::div(ExprPtr a, ExprPtr b) {
  if (is_const(a) && is_const(b) && !b->value.is_zero()) return constant(a->value / b->value);
  auto e = make(NodeKind::Div);
  e->lhs = std::move(a);
  e->rhs = std::move(b);
  return e;
}

ExprPtr Expr::neg(ExprPtr a) {
  if (is_const(a)) return constant(-a->value);
  auto e = make(NodeKind::Neg);
  e->lhs = std::move(a);
  return e;
}

ExprPtr Expr::pow(ExprPtr base, int exponent) {
  if (exponent < 0) fail(ErrorCode::InvalidArgument, "negative exponent");
  auto e = make(NodeKind::Pow);
  e->lhs = std::move(base);
  e->exponent = exponent;
  return e;
}

ExprPtr Expr::call(FunKind f, ExprPtr arg) {
  auto e = make(NodeKind::Fun);
  e->fun = f;
  e->lhs = std::move(arg);
  return e;
}

// ---------------------------------------------------------------------------
// Lexer / parser

namespace {

enum class Tok { Number, X, Y, Fun, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  size_t pos;
  std::string_view text;
  FunKind fun{};
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    size_t start = pos_;
    if (pos_ >= src_.size()) return {Tok::End, start, {}};
    char c = src_[pos_];
    switch (c) {
      case '+': ++pos_; return {Tok::Plus, start, src_.substr(start, 1)};
      case '-': ++pos_; return {Tok::Minus, start, src_.substr(start, 1)};
      case '*': ++pos_; return {Tok::Star, start, src_.substr(start, 1)};
      case '/': ++pos_; return {Tok::Slash, start, src_.substr(start, 1)};
      case '^': ++pos_; return {Tok::Caret, start, src_.substr(start, 1)};
      case '(': ++pos_; return {Tok::LParen, start, src_.substr(start, 1)};
      case ')': ++pos_; return {Tok::RParen, start, src_.substr(start, 1)};
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      if (pos_ < src_.size() && src_[pos_] == '.') {
        ++pos_;
        if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_])))
          fail(ErrorCode::Syntax, "expected digits after decimal point", static_cast<long>(pos_));
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      }
      return {Tok::Number, start, src_.substr(start, pos_ - start)};
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      std::string_view word = src_.substr(start, pos_ - start);
      if (word == "x") return {Tok::X, start, word};
      if (word == "y") return {Tok::Y, start, word};
      if (word == "sin") return {Tok::Fun, start, word, FunKind::Sin};
      if (word == "cos") return {Tok::Fun, start, word, FunKind::Cos};
      if (word == "exp") return {Tok::Fun, start, word, FunKind::Exp};
      if (word == "log") return {Tok::Fun, start, word, FunKind::Log};
      if (word == "sqrt") return {Tok::Fun, start, word, FunKind::Sqrt};
      fail(ErrorCode::Syntax, "unknown identifier '" + std::string(word) + "'",
           static_cast<long>(start));
    }
    fail(ErrorCode::Syntax, std::string("unexpected character '") + c + "'",
         static_cast<long>(start));
  }

 private:
  std::string_view src_;
  size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  ExprPtr parse() {
    ExprPtr e = expr();
    expect(Tok::End, "end of input");
    return e;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  void expect(Tok k, const char* what) {
    if (cur_.kind != k)
      fail(ErrorCode::Syntax,
           std::string("expected ") + what + ", found '" +
               (cur_.kind == Tok::End ? "end of input" : std::string(cur_.text)) + "'",
           static_cast<long>(cur_.pos));
    advance();
  }

  ExprPtr expr() {
    ExprPtr e = term();
    while (cur_.kind == Tok::Plus || cur_.kind == Tok::Minus) {
      bool plus = cur_.kind == Tok::Plus;
      advance();
      ExprPtr r = term();
      e = plus ? Expr::add(e, r) : Expr::sub(e, r);
    }
    return e;
  }

  ExprPtr term() {
    ExprPtr e = factor();
    while (cur_.kind == Tok::Star || cur_.kind == Tok::Slash) {
      bool star = cur_.kind == Tok::Star;
      advance();
      ExprPtr r = factor();
      e = star ? Expr::mul(e, r) : Expr::div(e, r);
    }
    return e;
  }

  ExprPtr factor() {
    if (cur_.kind == Tok::Minus) {
      advance();
      return Expr::neg(factor());
    }
    ExprPtr base = atom();
    if (cur_.kind == Tok::Caret) {
      advance();
      if (cur_.kind != Tok::Number || literal_requires_float(cur_.text))
        fail(ErrorCode::Syntax, "expected non-negative integer exponent",
             static_cast<long>(cur_.pos));
      long long n = 0;
      for (char c : cur_.text) {
        n = n * 10 + (c - '0');
        if (n > 1000)
          fail(ErrorCode::Syntax, "exponent too large", static_cast<long>(cur_.pos));
      }
      advance();
      return Expr::pow(base, static_cast<int>(n));
    }
    return base;
  }

  ExprPtr atom() {
    switch (cur_.kind) {
      case Tok::Number: {
        Scalar v = parse_scalar(cur_.text, literal_requires_float(cur_.text) ? Mode::Float
                                                                             : Mode::Rational);
        advance();
        return Expr::constant(std::move(v));
      }
      case Tok::X: advance(); return Expr::variable(Var::X);
      case Tok::Y: advance(); return Expr::variable(Var::Y);
      case Tok::Fun: {
        FunKind f = cur_.fun;
        advance();
        expect(Tok::LParen, "'('");
        ExprPtr arg = expr();
        expect(Tok::RParen, "')'");
        return Expr::call(f, arg);
      }
      case Tok::LParen: {
        advance();
        ExprPtr e = expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      default:
        fail(ErrorCode::Syntax,
             std::string("expected number, variable, function or '(', found '") +
                 (cur_.kind == Tok::End ? "end of input" : std::string(cur_.text)) + "'",
             static_cast<long>(cur_.pos));
    }
  }

  Lexer lexer_;
  Token cur_{};
};

}  // namespace

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Evaluation

Scalar eval(const Expr& e, const Scalar& x, const Scalar& y, Mode mode) {
  switch (e.kind) {
    case NodeKind::Constant:
      if (e.value.mode() == Mode::Float && mode == Mode::Rational)
        fail(ErrorCode::Mode, "float literal in rational-mode evaluation");
      return e.value.to_mode(mode);
    case NodeKind::VarX: return x.to_mode(mode);
    case NodeKind::VarY: return y.to_mode(mode);
    case NodeKind::Add: return eval(*e.lhs, x, y, mode) + eval(*e.rhs, x, y, mode);
    case NodeKind::Sub: return eval(*e.lhs, x, y, mode) - eval(*e.rhs, x, y, mode);
    case NodeKind::Mul: return eval(*e.lhs, x, y, mode) * eval(*e.rhs, x, y, mode);
    case NodeKind::Div: {
      Scalar den = eval(*e.rhs, x, y, mode);
      if (den.is_zero()) fail(ErrorCode::Domain, "division by zero");
      return eval(*e.lhs, x, y, mode) / den;
    }
    case NodeKind::Neg: return -eval(*e.lhs, x, y, mode);
    case NodeKind::Pow: return pow_scalar(eval(*e.lhs, x, y, mode), e.exponent);
    case NodeKind::Fun: {
      if (mode == Mode::Rational)
        fail(ErrorCode::Mode, "transcendental function in rational mode");
      double a = eval(*e.lhs, x, y, mode).to_double();
      switch (e.fun) {
        case FunKind::Sin: return Scalar::real(std::sin(a));
        case FunKind::Cos: return Scalar::real(std::cos(a));
        case FunKind::Exp: return Scalar::real(std::exp(a));
        case FunKind::Log:
          if (a <= 0.0) fail(ErrorCode::Domain, "log of non-positive value");
          return Scalar::real(std::log(a));
        case FunKind::Sqrt:
          if (a < 0.0) fail(ErrorCode::Domain, "sqrt of negative value");
          return Scalar::real(std::sqrt(a));
      }
      fail(ErrorCode::Internal, "unknown function");
    }
  }
  fail(ErrorCode::Internal, "unknown node kind");
}

// ---------------------------------------------------------------------------
// Differentiation

ExprPtr diff(const ExprPtr& e, Var var) {
  const Scalar zero = Scalar::rational(0);
  const Scalar one = Scalar::rational(1);
  switch (e->kind) {
    case NodeKind::Constant: return Expr::constant(zero);
    case NodeKind::VarX: return Expr::constant(var == Var::X ? one : zero);
    case NodeKind::VarY: return Expr::constant(var == Var::Y ? one : zero);
    case NodeKind::Add: return Expr::add(diff(e->lhs, var), diff(e->rhs, var));
    case NodeKind::Sub: return Expr::sub(diff(e->lhs, var), diff(e->rhs, var));
    case NodeKind::Mul:
      return Expr::add(Expr::mul(diff(e->lhs, var), e->rhs),
                       Expr::mul(e->lhs, diff(e->rhs, var)));
    case NodeKind::Div:
      return Expr::div(Expr::sub(Expr::mul(diff(e->lhs, var), e->rhs),
                                 Expr::mul(e->lhs, diff(e->rhs, var))),
                       Expr::pow(e->rhs, 2));
    case NodeKind::Neg: return Expr::neg(diff(e->lhs, var));
    case NodeKind::Pow: {
      if (e->exponent == 0) return Expr::constant(zero);
      ExprPtr scaled = Expr::mul(Expr::constant(Scalar::rational(e->exponent)),
                                 Expr::pow(e->lhs, e->exponent - 1));
      return Expr::mul(scaled, diff(e->lhs, var));
    }
    case NodeKind::Fun: {
      ExprPtr inner = diff(e->lhs, var);
      switch (e->fun) {
        case FunKind::Sin: return Expr::mul(Expr::call(FunKind::Cos, e->lhs), inner);
        case FunKind::Cos:
          return Expr::neg(Expr::mul(Expr::call(FunKind::Sin, e->lhs), inner));
        case FunKind::Exp: return Expr::mul(Expr::call(FunKind::Exp, e->lhs), inner);
        case FunKind::Log: return Expr::div(inner, e->lhs);
        case FunKind::Sqrt:
          return Expr::div(inner, Expr::mul(Expr::constant(Scalar::rational(2)),
                                            Expr::call(FunKind::Sqrt, e->lhs)));
      }
      fail(ErrorCode::Internal, "unknown function");
    }
  }
  fail(ErrorCode::Internal, "unknown node kind");
}

// ---------------------------------------------------------------------------
// Printing

namespace {

// Precedence levels: Add/Sub 1, Mul/Div 2, Neg 3, Pow 4, atoms 5.
int node_precedence(const Expr& e) {
  switch (e.kind) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    case NodeKind::Pow: return 4;
    case NodeKind::Constant: {
      // Negative and fractional constants print as '-a' / 'p/q' and must be
      // parenthesized like the operator expressions they reparse as.
      if (e.value.is_negative()) return e.value.mode() == Mode::Rational &&
                 boost::multiprecision::denominator(e.value.rat()) != 1 ? 2 : 3;
      if (e.value.mode() == Mode::Rational &&
          boost::multiprecision::denominator(e.value.rat()) != 1)
        return 2;
      return 5;
    }
    default: return 5;
  }
}

const char* fun_name(FunKind f) {
  switch (f) {
    case FunKind::Sin: return "sin";
    case FunKind::Cos: return "cos";
    case FunKind::Exp: return "exp";
    case FunKind::Log: return "log";
    case FunKind::Sqrt: return "sqrt";
  }
  return "?";
}

void render(const Expr& e, int min_prec, std::string& out) {
  int prec = node_precedence(e);
  bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (e.kind) {
    case NodeKind::Constant:
      // Exponent notation is not in the grammar; keep printed floats fixed.
      out += e.value.mode() == Mode::Float ? format_double_fixed(e.value.to_double())
                                           : e.value.str();
      break;
    case NodeKind::VarX: out += 'x'; break;
    case NodeKind::VarY: out += 'y'; break;
    case NodeKind::Add:
      render(*e.lhs, 1, out); out += " + "; render(*e.rhs, 2, out); break;
    case NodeKind::Sub:
      render(*e.lhs, 1, out); out += " - "; render(*e.rhs, 2, out); break;
    case NodeKind::Mul:
      render(*e.lhs, 2, out); out += '*'; render(*e.rhs, 3, out); break;
    case NodeKind::Div:
      render(*e.lhs, 2, out); out += '/'; render(*e.rhs, 3, out); break;
    case NodeKind::Neg:
      out += '-'; render(*e.lhs, 3, out); break;
    case NodeKind::Pow:
      render(*e.lhs, 5, out); out += '^'; out += std::to_string(e.exponent); break;
    case NodeKind::Fun:
      out += fun_name(e.fun); out += '('; render(*e.lhs, 0, out); out += ')'; break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string print_expr(const Expr& e) {
  std::string out;
  render(e, 0, out);
  return out;
}

bool requires_float(const Expr& e) {
  switch (e.kind) {
    case NodeKind::Constant: return e.value.mode() == Mode::Float;
    case NodeKind::VarX:
    case NodeKind::VarY: return false;
    case NodeKind::Fun: return true;
    case NodeKind::Neg:
    case NodeKind::Pow: return requires_float(*e.lhs);
    default: return requires_float(*e.lhs) || requires_float(*e.rhs);
  }
}

bool contains_var(const Expr& e, Var var) {
  switch (e.kind) {
    case NodeKind::Constant: return false;
    case NodeKind::VarX: return var == Var::X;
    case NodeKind::VarY: return var == Var::Y;
    case NodeKind::Neg:
    case NodeKind::Pow:
    case NodeKind::Fun: return contains_var(*e.lhs, var);
    default: return contains_var(*e.lhs, var) || contains_var(*e.rhs, var);
  }
}

}  // namespace impdiff
