// Directed-rounding real arithmetic.
//
// Every bound this library reports is evaluated in native binary64 with each
// primitive nudged outward, so the printed value never undershoots the exact
// real expression. Elementary operations (+, -, *, /, sqrt) round exactly in
// the requested direction using TwoSum/FMA residuals; log, exp and pow get a
// two-ulp outward guard since the C library does not promise correct rounding.
//
// UpperReal is the single-direction value used at API boundaries. Bracket
// carries both directions at once and is what the formula code uses when an
// expression has signed intermediate terms.
#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace lbound {

using Rational = boost::rational<std::int64_t>;

enum class Rounding { up, down };

class ModeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {

double next_up(double x);
double next_down(double x);

// Sign-agnostic directed primitives.
double add_up(double a, double b);
double add_down(double a, double b);
double sub_up(double a, double b);
double sub_down(double a, double b);
double mul_up(double a, double b);
double mul_down(double a, double b);
double div_up(double a, double b);
double div_down(double a, double b);
double sqrt_up(double x);
double sqrt_down(double x);

// Monotone transcendentals with a two-ulp guard.
double log_up(double x);
double log_down(double x);
double exp_up(double x);
double exp_down(double x);
double pow_up(double base, double exponent);
double pow_down(double base, double exponent);

}  // namespace detail

/// A real number together with the side on which it bounds an exact value.
/// mode == up means value >= exact; mode == down means value <= exact.
class UpperReal {
 public:
  constexpr UpperReal() = default;

  static constexpr UpperReal up(double v) { return UpperReal(v, Rounding::up); }
  static constexpr UpperReal down(double v) { return UpperReal(v, Rounding::down); }

  constexpr double value() const { return value_; }
  constexpr Rounding mode() const { return mode_; }
  constexpr bool is_up() const { return mode_ == Rounding::up; }

 private:
  constexpr UpperReal(double v, Rounding m) : value_(v), mode_(m) {}

  double value_ = 0.0;
  Rounding mode_ = Rounding::up;
};

// Nonnegative-operand arithmetic. Both operands must share the result's mode.
UpperReal up_add(UpperReal a, UpperReal b);
UpperReal down_add(UpperReal a, UpperReal b);
UpperReal up_mul(UpperReal a, UpperReal b);
UpperReal down_mul(UpperReal a, UpperReal b);

// Division flips the mode of the denominator: up / down -> up.
UpperReal up_div(UpperReal num, UpperReal den);
UpperReal down_div(UpperReal num, UpperReal den);

// pow with a nonnegative exponent keeps the base's mode; a negative exponent
// consumes the opposite mode. The exponent is an exact rational; when it is
// not a binary64 value both neighbouring doubles are tried.
UpperReal up_pow(UpperReal base, Rational exponent);
UpperReal down_pow(UpperReal base, Rational exponent);
UpperReal up_pow(UpperReal base, double exponent);
UpperReal down_pow(UpperReal base, double exponent);

UpperReal up_log(UpperReal x);
UpperReal down_log(UpperReal x);

/// Lower and upper directed evaluations of one exact real.
class Bracket {
 public:
  Bracket() = default;

  /// A binary64 value taken as exact.
  static Bracket exact(double v) { return Bracket(v, v); }
  static Bracket of(Rational r);
  /// Parses a decimal literal ("1.5197", "1e10", "10000000019"). The result
  /// is exact when the literal is an integer below 2^53, otherwise widened
  /// by one ulp on each side of the nearest double.
  static Bracket from_decimal(std::string_view text);
  static Bracket between(double lo, double hi);

  double lower() const { return lo_; }
  double upper() const { return hi_; }
  double mid() const { return 0.5 * (lo_ + hi_); }
  UpperReal upper_bound() const { return UpperReal::up(hi_); }
  UpperReal lower_bound() const { return UpperReal::down(lo_); }
  bool positive() const { return lo_ > 0.0; }
  bool nonnegative() const { return lo_ >= 0.0; }

  Bracket& operator+=(const Bracket& o);
  Bracket& operator-=(const Bracket& o);
  Bracket& operator*=(const Bracket& o);
  Bracket& operator/=(const Bracket& o);

 private:
  Bracket(double lo, double hi) : lo_(lo), hi_(hi) {}

  double lo_ = 0.0;
  double hi_ = 0.0;
};

Bracket operator+(Bracket a, const Bracket& b);
Bracket operator-(Bracket a, const Bracket& b);
Bracket operator*(Bracket a, const Bracket& b);
Bracket operator/(Bracket a, const Bracket& b);
Bracket operator-(const Bracket& a);

Bracket log(const Bracket& x);
Bracket exp(const Bracket& x);
Bracket sqrt(const Bracket& x);
Bracket pow(const Bracket& base, Rational exponent);
Bracket pow(const Bracket& base, const Bracket& exponent);
Bracket abs(const Bracket& x);
Bracket max(const Bracket& a, const Bracket& b);
/// |x + iy|, both enclosed.
Bracket hypot(const Bracket& x, const Bracket& y);

/// π enclosed by adjacent doubles.
Bracket pi();

/// Smallest multiple of 10^-digits that is >= x, as integer numerator and text.
struct DecimalCeil {
  std::int64_t scaled = 0;  // value * 10^digits
  int digits = 0;
  std::string text;
  double value() const;
};
DecimalCeil ceil_decimal(double x, int digits);

/// Prints x rounded toward +infinity at the given significant digits.
std::string format_up(double x, int significant = 12);

double to_double(Rational r);

}  // namespace lbound
