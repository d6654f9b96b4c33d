#include "scalar.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

namespace impdiff {

const char* mode_name(Mode m) { return m == Mode::Rational ? "rational" : "float"; }

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::PartialConfluency: return "PartialConfluency";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::Syntax: return "Syntax";
    case ErrorCode::Domain: return "Domain";
    case ErrorCode::Mode: return "Mode";
    case ErrorCode::SingularPivot: return "SingularPivot";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DerivativeVanished: return "DerivativeVanished";
    case ErrorCode::BranchJump: return "BranchJump";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::Residual: return "Residual";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

void fail(ErrorCode code, const std::string& message, long position) {
  throw Error(code, message, position);
}

Scalar Scalar::rational(long long num, long long den) {
  if (den == 0) fail(ErrorCode::ZeroDenominator, "rational with zero denominator");
  return Scalar(BigRational(BigInt(num), BigInt(den)));
}

Scalar Scalar::from_int(long long v, Mode m) {
  return m == Mode::Rational ? Scalar(BigRational(v)) : Scalar(static_cast<double>(v));
}

bool Scalar::is_zero() const {
  if (auto* d = std::get_if<double>(&v_)) return *d == 0.0;
  return std::get<BigRational>(v_).is_zero();
}

bool Scalar::is_negative() const {
  if (auto* d = std::get_if<double>(&v_)) return *d < 0.0;
  return std::get<BigRational>(v_) < 0;
}

const BigRational& Scalar::rat() const {
  if (mode() != Mode::Rational) fail(ErrorCode::Mode, "float scalar has no exact rational view");
  return std::get<BigRational>(v_);
}

double Scalar::to_double() const {
  if (auto* d = std::get_if<double>(&v_)) return *d;
  return std::get<BigRational>(v_).convert_to<double>();
}

Scalar Scalar::to_mode(Mode m) const {
  if (m == mode()) return *this;
  if (m == Mode::Float) return Scalar(to_double());
  fail(ErrorCode::Mode, "cannot convert a float scalar to rational mode");
}

std::optional<long long> Scalar::as_integer() const {
  if (mode() == Mode::Rational) {
    const BigRational& r = rat();
    if (boost::multiprecision::denominator(r) != 1) return std::nullopt;
    BigInt n = boost::multiprecision::numerator(r);
    if (n > std::numeric_limits<long long>::max() || n < std::numeric_limits<long long>::min())
      return std::nullopt;
    return n.convert_to<long long>();
  }
  double d = to_double();
  if (!std::isfinite(d) || d != std::floor(d)) return std::nullopt;
  if (std::fabs(d) > 9.0e18) return std::nullopt;
  return static_cast<long long>(d);
}

Scalar Scalar::operator-() const {
  if (auto* d = std::get_if<double>(&v_)) return Scalar(-*d);
  return Scalar(-std::get<BigRational>(v_));
}

namespace {

template <typename RatOp, typename DblOp>
Scalar binop(const Scalar& a, const Scalar& b, RatOp rop, DblOp dop) {
  if (a.mode() == Mode::Rational && b.mode() == Mode::Rational)
    return Scalar::rational(rop(a.rat(), b.rat()));
  return Scalar::real(dop(a.to_double(), b.to_double()));
}

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  return binop(a, b, [](const BigRational& x, const BigRational& y) { return x + y; },
               [](double x, double y) { return x + y; });
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  return binop(a, b, [](const BigRational& x, const BigRational& y) { return x - y; },
               [](double x, double y) { return x - y; });
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  return binop(a, b, [](const BigRational& x, const BigRational& y) { return x * y; },
               [](double x, double y) { return x * y; });
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) fail(ErrorCode::Domain, "division by zero");
  return binop(a, b, [](const BigRational& x, const BigRational& y) { return x / y; },
               [](double x, double y) { return x / y; });
}

bool Scalar::operator==(const Scalar& o) const {
  if (mode() == Mode::Rational && o.mode() == Mode::Rational) return rat() == o.rat();
  return to_double() == o.to_double();
}

std::string format_double(double d) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), d);
  return std::string(buf, res.ptr);
}

std::string format_double_fixed(double d) {
  std::string buf(1200, '\0');
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), d, std::chars_format::fixed);
  if (res.ec != std::errc()) return format_double(d);
  buf.resize(res.ptr - buf.data());
  return buf;
}

std::string Scalar::str() const {
  if (mode() == Mode::Float) return format_double(to_double());
  const BigRational& r = rat();
  std::string num = boost::multiprecision::numerator(r).convert_to<std::string>();
  BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num;
  return num + "/" + den.convert_to<std::string>();
}

Scalar abs(const Scalar& a) { return a.is_negative() ? -a : a; }

Scalar pow_scalar(Scalar base, int n) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "negative exponent");
  Scalar result = Scalar::one(base.mode());
  while (n > 0) {
    if (n & 1) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

bool approx_equal(const Scalar& a, const Scalar& b, double rel, double abs_floor) {
  if (a.mode() == Mode::Rational && b.mode() == Mode::Rational) return a == b;
  double x = a.to_double(), y = b.to_double();
  double diff = std::fabs(x - y);
  double scale = std::max(std::fabs(x), std::fabs(y));
  return diff <= std::max(abs_floor, rel * scale);
}

Scalar factorial_scalar(int n, Mode m) {
  if (n < 0) fail(ErrorCode::InvalidArgument, "factorial of negative order");
  if (m == Mode::Rational) {
    BigInt f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Scalar::rational(BigRational(f));
  }
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return Scalar::real(f);
}

bool literal_requires_float(std::string_view text) {
  return text.find('.') != std::string_view::npos || text.find('e') != std::string_view::npos ||
         text.find('E') != std::string_view::npos;
}

namespace {

BigInt parse_bigint(std::string_view digits, std::string_view whole) {
  if (digits.empty()) fail(ErrorCode::Syntax, "malformed number '" + std::string(whole) + "'");
  for (char c : digits)
    if (c < '0' || c > '9') fail(ErrorCode::Syntax, "malformed number '" + std::string(whole) + "'");
  return BigInt(std::string(digits));
}

}  // namespace

Scalar parse_scalar(std::string_view text, Mode m) {
  std::string_view s = text;
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (s.empty()) fail(ErrorCode::Syntax, "empty number");

  bool negative = false;
  std::string_view body = s;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_bigint(body.substr(0, slash), s);
    BigInt den = parse_bigint(body.substr(slash + 1), s);
    if (den == 0) fail(ErrorCode::ZeroDenominator, "zero denominator in '" + std::string(s) + "'");
    BigRational r(num, den);
    if (negative) r = -r;
    return Scalar::rational(r).to_mode(m);
  }

  if (literal_requires_float(body)) {
    if (m == Mode::Rational)
      fail(ErrorCode::Mode, "decimal literal '" + std::string(s) + "' requires float mode");
    double d = 0.0;
    auto res = std::from_chars(body.data(), body.data() + body.size(), d);
    if (res.ec != std::errc() || res.ptr != body.data() + body.size())
      fail(ErrorCode::Syntax, "malformed number '" + std::string(s) + "'");
    return Scalar::real(negative ? -d : d);
  }

  BigRational r(parse_bigint(body, s));
  if (negative) r = -r;
  return Scalar::rational(r).to_mode(m);
}

}  // namespace impdiff
