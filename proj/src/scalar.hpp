#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace impdiff {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Arithmetic realization of a value: exact rationals or IEEE doubles.
// A computation session sticks to one mode; mixing promotes to Float.
enum class Mode { Rational, Float };

const char* mode_name(Mode m);

enum class ErrorCode {
  InvalidArgument,
  LengthMismatch,
  PartialConfluency,
  IndexOutOfRange,
  Syntax,
  Domain,
  Mode,
  SingularPivot,
  NoConvergence,
  DerivativeVanished,
  BranchJump,
  ZeroDenominator,
  Residual,
  Internal,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, long position = -1)
      : std::runtime_error(std::move(message)), code_(code), position_(position) {}

  ErrorCode code() const { return code_; }
  // Byte offset for syntax errors, -1 otherwise.
  long position() const { return position_; }

 private:
  ErrorCode code_;
  long position_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message, long position = -1);

// Numeric value tagged with its realization. Binary operations promote
// Rational to Float when the modes differ; Float never converts back.
class Scalar {
 public:
  Scalar() : v_(BigRational(0)) {}

  static Scalar rational(BigRational r) { return Scalar(std::move(r)); }
  static Scalar rational(long long num, long long den = 1);
  static Scalar real(double d) { return Scalar(d); }
  static Scalar zero(Mode m) { return from_int(0, m); }
  static Scalar one(Mode m) { return from_int(1, m); }
  static Scalar from_int(long long v, Mode m);

  Mode mode() const { return std::holds_alternative<double>(v_) ? Mode::Float : Mode::Rational; }
  bool is_zero() const;
  bool is_negative() const;

  const BigRational& rat() const;
  double to_double() const;
  Scalar to_mode(Mode m) const;

  // Exact integer value if the scalar is one (Float must be integral and in range).
  std::optional<long long> as_integer() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
  Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
  Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
  Scalar& operator/=(const Scalar& o) { *this = *this / o; return *this; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // "p/q" in rational mode, shortest round-trip decimal in float mode.
  std::string str() const;

 private:
  explicit Scalar(BigRational r) : v_(std::move(r)) {}
  explicit Scalar(double d) : v_(d) {}

  std::variant<BigRational, double> v_;
};

Scalar abs(const Scalar& a);

// base^n for n >= 0 by repeated squaring (exact in rational mode).
Scalar pow_scalar(Scalar base, int n);

// |a - b| <= max(abs_floor, rel * max(|a|, |b|)); exact comparison when both rational.
bool approx_equal(const Scalar& a, const Scalar& b, double rel = 1e-9, double abs_floor = 1e-12);

Scalar factorial_scalar(int n, Mode m);

// Accepts "p", "-p/q", "p.ddd"; Float mode additionally accepts anything
// std::from_chars<double> does. Decimal literals are rejected in Rational mode.
Scalar parse_scalar(std::string_view text, Mode m);

// True if the literal uses a decimal point / exponent and therefore forces Float.
bool literal_requires_float(std::string_view text);

std::string format_double(double d);

// Fixed-notation round-trip rendering (no exponent), for grammar output.
std::string format_double_fixed(double d);

}  // namespace impdiff
