#include "lbound/roundmath.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace lbound {
namespace detail {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTiny = 0x1p-968;

// Exact residual of a floating-point sum: a + b == s + err.
double two_sum_err(double a, double b, double s) {
  const double bb = s - a;
  return (a - (s - bb)) + (b - bb);
}

double guard_up(double v, int ulps) {
  for (int i = 0; i < ulps; ++i) v = next_up(v);
  return v;
}

double guard_down(double v, int ulps) {
  for (int i = 0; i < ulps; ++i) v = next_down(v);
  return v;
}

constexpr int kTranscendentalGuard = 2;

}  // namespace

double next_up(double x) { return std::nextafter(x, kInf); }
double next_down(double x) { return std::nextafter(x, -kInf); }

double add_up(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) return s;
  return two_sum_err(a, b, s) > 0.0 ? next_up(s) : s;
}

double add_down(double a, double b) {
  const double s = a + b;
  if (!std::isfinite(s)) return s;
  return two_sum_err(a, b, s) < 0.0 ? next_down(s) : s;
}

double sub_up(double a, double b) { return add_up(a, -b); }
double sub_down(double a, double b) { return add_down(a, -b); }

double mul_up(double a, double b) {
  const double p = a * b;
  if (!std::isfinite(p)) return p;
  if (a == 0.0 || b == 0.0) return p;
  // Near the subnormal range the FMA residual is itself inexact.
  if (std::fabs(p) < kTiny) return next_up(p);
  return std::fma(a, b, -p) > 0.0 ? next_up(p) : p;
}

double mul_down(double a, double b) { return -mul_up(-a, b); }

double div_up(double a, double b) {
  const double q = a / b;
  if (!std::isfinite(q)) return q;
  if (a == 0.0) return q;
  if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return next_up(q);
  const double r = std::fma(-q, b, a);  // a - q*b, exact
  const bool exact_above = (r > 0.0 && b > 0.0) || (r < 0.0 && b < 0.0);
  return exact_above ? next_up(q) : q;
}

double div_down(double a, double b) { return -div_up(-a, b); }

double sqrt_up(double x) {
  const double r = std::sqrt(x);
  if (!std::isfinite(r) || r == 0.0) return r;
  return std::fma(-r, r, x) > 0.0 ? next_up(r) : r;
}

double sqrt_down(double x) {
  const double r = std::sqrt(x);
  if (!std::isfinite(r) || r == 0.0) return r;
  return std::fma(-r, r, x) < 0.0 ? next_down(r) : r;
}

double log_up(double x) {
  if (x == 1.0) return 0.0;
  return guard_up(std::log(x), kTranscendentalGuard);
}

double log_down(double x) {
  if (x == 1.0) return 0.0;
  return guard_down(std::log(x), kTranscendentalGuard);
}

double exp_up(double x) {
  if (x == 0.0) return 1.0;
  return guard_up(std::exp(x), kTranscendentalGuard);
}

double exp_down(double x) {
  if (x == 0.0) return 1.0;
  return std::max(0.0, guard_down(std::exp(x), kTranscendentalGuard));
}

double pow_up(double base, double exponent) {
  if (base == 1.0 || exponent == 0.0) return 1.0;
  if (exponent == 1.0) return base;
  if (exponent == 0.5) return sqrt_up(base);
  if (base == 0.0) return exponent > 0.0 ? 0.0 : kInf;
  return guard_up(std::pow(base, exponent), kTranscendentalGuard);
}

double pow_down(double base, double exponent) {
  if (base == 1.0 || exponent == 0.0) return 1.0;
  if (exponent == 1.0) return base;
  if (exponent == 0.5) return sqrt_down(base);
  if (base == 0.0) return exponent > 0.0 ? 0.0 : kInf;
  return std::max(0.0, guard_down(std::pow(base, exponent), kTranscendentalGuard));
}

}  // namespace detail

using namespace detail;

namespace {

void require_mode(UpperReal x, Rounding want, const char* op) {
  if (x.mode() != want) {
    throw ModeError(std::string(op) + ": operand has the wrong rounding mode");
  }
}

void require_nonnegative(UpperReal x, const char* op) {
  if (!(x.value() >= 0.0)) throw DomainError(std::string(op) + ": operand must be >= 0");
}

// Both neighbours of an exact rational exponent.
std::pair<double, double> exponent_pair(Rational e) {
  const double n = static_cast<double>(e.numerator());
  const double d = static_cast<double>(e.denominator());
  return {div_down(n, d), div_up(n, d)};
}

double pow_up_rational(double base, Rational e) {
  const auto [lo, hi] = exponent_pair(e);
  if (lo == hi) return pow_up(base, lo);
  return std::max(pow_up(base, lo), pow_up(base, hi));
}

double pow_down_rational(double base, Rational e) {
  const auto [lo, hi] = exponent_pair(e);
  if (lo == hi) return pow_down(base, lo);
  return std::min(pow_down(base, lo), pow_down(base, hi));
}

void require_pow_base(double base, double exponent) {
  if (base < 0.0 || std::isnan(base)) throw DomainError("pow: negative base");
  if (base == 0.0 && exponent < 0.0) throw DomainError("pow: zero base with negative exponent");
}

}  // namespace

UpperReal up_add(UpperReal a, UpperReal b) {
  require_mode(a, Rounding::up, "up_add");
  require_mode(b, Rounding::up, "up_add");
  require_nonnegative(a, "up_add");
  require_nonnegative(b, "up_add");
  return UpperReal::up(add_up(a.value(), b.value()));
}

UpperReal down_add(UpperReal a, UpperReal b) {
  require_mode(a, Rounding::down, "down_add");
  require_mode(b, Rounding::down, "down_add");
  require_nonnegative(a, "down_add");
  require_nonnegative(b, "down_add");
  return UpperReal::down(add_down(a.value(), b.value()));
}

UpperReal up_mul(UpperReal a, UpperReal b) {
  require_mode(a, Rounding::up, "up_mul");
  require_mode(b, Rounding::up, "up_mul");
  require_nonnegative(a, "up_mul");
  require_nonnegative(b, "up_mul");
  return UpperReal::up(mul_up(a.value(), b.value()));
}

UpperReal down_mul(UpperReal a, UpperReal b) {
  require_mode(a, Rounding::down, "down_mul");
  require_mode(b, Rounding::down, "down_mul");
  require_nonnegative(a, "down_mul");
  require_nonnegative(b, "down_mul");
  return UpperReal::down(mul_down(a.value(), b.value()));
}

UpperReal up_div(UpperReal num, UpperReal den) {
  require_mode(num, Rounding::up, "up_div");
  require_mode(den, Rounding::down, "up_div");
  require_nonnegative(num, "up_div");
  if (!(den.value() > 0.0)) throw DomainError("up_div: denominator must be > 0");
  return UpperReal::up(div_up(num.value(), den.value()));
}

UpperReal down_div(UpperReal num, UpperReal den) {
  require_mode(num, Rounding::down, "down_div");
  require_mode(den, Rounding::up, "down_div");
  require_nonnegative(num, "down_div");
  if (!(den.value() > 0.0)) throw DomainError("down_div: denominator must be > 0");
  return UpperReal::down(div_down(num.value(), den.value()));
}

UpperReal up_pow(UpperReal base, Rational exponent) {
  require_mode(base, exponent >= 0 ? Rounding::up : Rounding::down, "up_pow");
  require_pow_base(base.value(), to_double(exponent));
  return UpperReal::up(pow_up_rational(base.value(), exponent));
}

UpperReal down_pow(UpperReal base, Rational exponent) {
  require_mode(base, exponent >= 0 ? Rounding::down : Rounding::up, "down_pow");
  require_pow_base(base.value(), to_double(exponent));
  return UpperReal::down(pow_down_rational(base.value(), exponent));
}

UpperReal up_pow(UpperReal base, double exponent) {
  require_mode(base, exponent >= 0 ? Rounding::up : Rounding::down, "up_pow");
  require_pow_base(base.value(), exponent);
  return UpperReal::up(pow_up(base.value(), exponent));
}

UpperReal down_pow(UpperReal base, double exponent) {
  require_mode(base, exponent >= 0 ? Rounding::down : Rounding::up, "down_pow");
  require_pow_base(base.value(), exponent);
  return UpperReal::down(pow_down(base.value(), exponent));
}

UpperReal up_log(UpperReal x) {
  require_mode(x, Rounding::up, "up_log");
  if (!(x.value() > 0.0)) throw DomainError("up_log: argument must be > 0");
  return UpperReal::up(log_up(x.value()));
}

UpperReal down_log(UpperReal x) {
  require_mode(x, Rounding::down, "down_log");
  if (!(x.value() > 0.0)) throw DomainError("down_log: argument must be > 0");
  return UpperReal::down(log_down(x.value()));
}

// ---------------------------------------------------------------------------
// Bracket

Bracket Bracket::of(Rational r) {
  const double n = static_cast<double>(r.numerator());
  const double d = static_cast<double>(r.denominator());
  return Bracket(div_down(n, d), div_up(n, d));
}

Bracket Bracket::from_decimal(std::string_view text) {
  const std::string s(text);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || !std::isfinite(v)) {
    throw DomainError("not a decimal number: '" + s + "'");
  }
  const bool integer_literal =
      s.find_first_not_of("+-0123456789") == std::string::npos;
  if (integer_literal && std::fabs(v) < 9007199254740992.0) return Bracket(v, v);
  return Bracket(next_down(v), next_up(v));
}

Bracket Bracket::between(double lo, double hi) {
  if (!(lo <= hi)) throw DomainError("Bracket::between: lo > hi");
  return Bracket(lo, hi);
}

Bracket& Bracket::operator+=(const Bracket& o) {
  lo_ = add_down(lo_, o.lo_);
  hi_ = add_up(hi_, o.hi_);
  return *this;
}

Bracket& Bracket::operator-=(const Bracket& o) {
  const double lo = sub_down(lo_, o.hi_);
  const double hi = sub_up(hi_, o.lo_);
  lo_ = lo;
  hi_ = hi;
  return *this;
}

Bracket& Bracket::operator*=(const Bracket& o) {
  const std::array<double, 4> lows{mul_down(lo_, o.lo_), mul_down(lo_, o.hi_),
                                   mul_down(hi_, o.lo_), mul_down(hi_, o.hi_)};
  const std::array<double, 4> highs{mul_up(lo_, o.lo_), mul_up(lo_, o.hi_),
                                    mul_up(hi_, o.lo_), mul_up(hi_, o.hi_)};
  lo_ = *std::min_element(lows.begin(), lows.end());
  hi_ = *std::max_element(highs.begin(), highs.end());
  return *this;
}

Bracket& Bracket::operator/=(const Bracket& o) {
  if (o.lo_ <= 0.0 && o.hi_ >= 0.0) throw DomainError("division by a bracket containing 0");
  const std::array<double, 4> lows{div_down(lo_, o.lo_), div_down(lo_, o.hi_),
                                   div_down(hi_, o.lo_), div_down(hi_, o.hi_)};
  const std::array<double, 4> highs{div_up(lo_, o.lo_), div_up(lo_, o.hi_),
                                    div_up(hi_, o.lo_), div_up(hi_, o.hi_)};
  lo_ = *std::min_element(lows.begin(), lows.end());
  hi_ = *std::max_element(highs.begin(), highs.end());
  return *this;
}

Bracket operator+(Bracket a, const Bracket& b) { return a += b; }
Bracket operator-(Bracket a, const Bracket& b) { return a -= b; }
Bracket operator*(Bracket a, const Bracket& b) { return a *= b; }
Bracket operator/(Bracket a, const Bracket& b) { return a /= b; }
Bracket operator-(const Bracket& a) { return Bracket::between(-a.upper(), -a.lower()); }

Bracket log(const Bracket& x) {
  if (!(x.lower() > 0.0)) throw DomainError("log of a non-positive bracket");
  return Bracket::between(log_down(x.lower()), log_up(x.upper()));
}

Bracket exp(const Bracket& x) {
  return Bracket::between(exp_down(x.lower()), exp_up(x.upper()));
}

Bracket sqrt(const Bracket& x) {
  if (x.lower() < 0.0) throw DomainError("sqrt of a negative bracket");
  return Bracket::between(sqrt_down(x.lower()), sqrt_up(x.upper()));
}

Bracket pow(const Bracket& base, Rational exponent) {
  require_pow_base(base.lower(), to_double(exponent));
  if (exponent >= 0) {
    return Bracket::between(pow_down_rational(base.lower(), exponent),
                            pow_up_rational(base.upper(), exponent));
  }
  return Bracket::between(pow_down_rational(base.upper(), exponent),
                          pow_up_rational(base.lower(), exponent));
}

Bracket pow(const Bracket& base, const Bracket& exponent) {
  require_pow_base(base.lower(), exponent.lower());
  const std::array<double, 4> lows{
      pow_down(base.lower(), exponent.lower()), pow_down(base.lower(), exponent.upper()),
      pow_down(base.upper(), exponent.lower()), pow_down(base.upper(), exponent.upper())};
  const std::array<double, 4> highs{
      pow_up(base.lower(), exponent.lower()), pow_up(base.lower(), exponent.upper()),
      pow_up(base.upper(), exponent.lower()), pow_up(base.upper(), exponent.upper())};
  return Bracket::between(*std::min_element(lows.begin(), lows.end()),
                          *std::max_element(highs.begin(), highs.end()));
}

Bracket abs(const Bracket& x) {
  if (x.lower() >= 0.0) return x;
  if (x.upper() <= 0.0) return -x;
  return Bracket::between(0.0, std::max(-x.lower(), x.upper()));
}

Bracket max(const Bracket& a, const Bracket& b) {
  return Bracket::between(std::max(a.lower(), b.lower()), std::max(a.upper(), b.upper()));
}

Bracket hypot(const Bracket& x, const Bracket& y) {
  const Bracket ax = abs(x);
  const Bracket ay = abs(y);
  return sqrt(ax * ax + ay * ay);
}

Bracket pi() {
  // M_PI is the double just below pi.
  constexpr double kPiBelow = 3.141592653589793115997963468544185161590576171875;
  return Bracket::between(kPiBelow, next_up(kPiBelow));
}

double to_double(Rational r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// ---------------------------------------------------------------------------
// Display

double DecimalCeil::value() const {
  double scale = 1.0;
  for (int i = 0; i < digits; ++i) scale *= 10.0;
  return static_cast<double>(scaled) / scale;
}

DecimalCeil ceil_decimal(double x, int digits) {
  double scale = 1.0;
  for (int i = 0; i < digits; ++i) scale *= 10.0;
  DecimalCeil out;
  out.digits = digits;
  out.scaled = static_cast<std::int64_t>(std::ceil(mul_up(x, scale)));
  const std::int64_t whole = out.scaled / static_cast<std::int64_t>(scale);
  std::int64_t frac = out.scaled % static_cast<std::int64_t>(scale);
  std::string sign;
  if (out.scaled < 0) {
    sign = "-";
    frac = -frac;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s%lld.%0*lld", sign.c_str(),
                static_cast<long long>(whole < 0 ? -whole : whole), digits,
                static_cast<long long>(frac));
  out.text = buf;
  return out;
}

std::string format_up(double x, int significant) {
  if (!std::isfinite(x)) return std::to_string(x);
  if (x == 0.0) return "0";
  // glibc prints the exact binary value when asked for enough digits.
  static thread_local char buf[1200];
  std::snprintf(buf, sizeof buf, "%.780e", x);
  std::string s(buf);
  const bool negative = s[0] == '-';
  if (negative) s.erase(0, 1);
  const auto epos = s.find('e');
  std::string mant = s.substr(0, epos);
  int exponent = std::atoi(s.c_str() + epos + 1);
  mant.erase(1, 1);  // drop the decimal point
  std::string kept = mant.substr(0, significant);
  const bool tail_nonzero =
      mant.find_first_not_of('0', static_cast<std::size_t>(significant)) != std::string::npos;
  if (tail_nonzero && !negative) {
    int i = significant - 1;
    while (i >= 0 && kept[i] == '9') kept[i--] = '0';
    if (i < 0) {
      kept.insert(kept.begin(), '1');
      kept.pop_back();
      ++exponent;
    } else {
      ++kept[i];
    }
  }
  std::string out = negative ? "-" : "";
  out += kept[0];
  if (significant > 1) out += "." + kept.substr(1);
  char ebuf[16];
  std::snprintf(ebuf, sizeof ebuf, "e%+03d", exponent);
  return out + ebuf;
}

}  // namespace lbound
