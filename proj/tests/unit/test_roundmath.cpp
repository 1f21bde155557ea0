#include "lbound/roundmath.hpp"

#include "../support/expr_tree.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace lbound;
using testsupport::Ref;

TEST_CASE("directed primitives bracket the exact result") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> ex(-60, 60);
  auto draw = [&] { return std::ldexp(mant(rng), ex(rng)); };
  for (int i = 0; i < 20000; ++i) {
    const double a = draw(), b = draw();
    const Ref A(a), B(b);
    CHECK(Ref(detail::add_up(a, b)) >= A + B);
    CHECK(Ref(detail::add_down(a, b)) <= A + B);
    CHECK(Ref(detail::sub_up(a, b)) >= A - B);
    CHECK(Ref(detail::sub_down(a, b)) <= A - B);
    CHECK(Ref(detail::mul_up(a, b)) >= A * B);
    CHECK(Ref(detail::mul_down(a, b)) <= A * B);
    if (b != 0.0) {
      CHECK(Ref(detail::div_up(a, b)) >= A / B);
      CHECK(Ref(detail::div_down(a, b)) <= A / B);
    }
    const double p = std::fabs(a);
    CHECK(Ref(detail::sqrt_up(p)) >= sqrt(Ref(p)));
    CHECK(Ref(detail::sqrt_down(p)) <= sqrt(Ref(p)));
    if (p > 0.0) {
      CHECK(Ref(detail::log_up(p)) >= log(Ref(p)));
      CHECK(Ref(detail::log_down(p)) <= log(Ref(p)));
    }
    const double e = std::ldexp(mant(rng), 5);
    CHECK(Ref(detail::exp_up(e)) >= exp(Ref(e)));
    CHECK(Ref(detail::exp_down(e)) <= exp(Ref(e)));
  }
}

TEST_CASE("exact operations are not nudged") {
  CHECK(detail::add_up(1.0, 1.0) == 2.0);
  CHECK(detail::add_down(1.0, 1.0) == 2.0);
  CHECK(detail::mul_up(3.0, 0.5) == 1.5);
  CHECK(detail::div_down(1.0, 4.0) == 0.25);
  CHECK(detail::sqrt_up(9.0) == 3.0);
  CHECK(detail::add_up(0.1, 0.2) > detail::add_down(0.1, 0.2));
}

TEST_CASE("UpperReal modes") {
  const UpperReal a = UpperReal::up(2.0), b = UpperReal::up(3.0);
  CHECK(up_add(a, b).value() >= 5.0);
  CHECK(up_add(a, b).is_up());
  CHECK_THROWS_AS(up_add(a, UpperReal::down(1.0)), ModeError);
  CHECK(up_div(UpperReal::up(1.0), UpperReal::down(3.0)).value() >= 1.0 / 3.0);
  CHECK_THROWS_AS(up_div(UpperReal::up(1.0), UpperReal::up(3.0)), ModeError);
  // a negative exponent needs the opposite mode on the base
  CHECK(up_pow(UpperReal::down(2.0), Rational(-1, 2)).value() >= 1.0 / std::sqrt(2.0));
  CHECK_THROWS_AS(up_log(UpperReal::up(-1.0)), DomainError);
}

TEST_CASE("rational powers take both neighbours of an inexact exponent") {
  // 1/3 is not a double; the enclosure must hold the exact cube root of 10.
  const Bracket r = pow(Bracket::exact(10.0), Rational(1, 3));
  const Ref exact = pow(Ref(10), Ref(1) / Ref(3));
  CHECK(Ref(r.lower()) <= exact);
  CHECK(Ref(r.upper()) >= exact);
  CHECK(r.upper() - r.lower() < 1e-14);
}

TEST_CASE("decimal parsing and printing round outward") {
  const Bracket b = Bracket::from_decimal("1.5197");
  CHECK(Ref(b.lower()) <= Ref("1.5197"));
  CHECK(Ref(b.upper()) >= Ref("1.5197"));
  CHECK(Bracket::from_decimal("10000000019").lower() == 10000000019.0);
  CHECK_THROWS_AS(Bracket::from_decimal("1.5x"), DomainError);

  CHECK(ceil_decimal(0.89679, 3).text == "0.897");
  CHECK(ceil_decimal(0.25, 3).text == "0.250");
  // 0.918 is not a double; the nearest one lies above it
  CHECK(ceil_decimal(0.918, 3).text == "0.919");
  CHECK(ceil_decimal(0.9180000001, 3).text == "0.919");
  for (double x : {1.0 / 3.0, 11147.719998209628, 6.02e23, 1e-300}) {
    CHECK(std::strtod(format_up(x, 12).c_str(), nullptr) >= x);
  }
}

TEST_CASE("pi encloses the 50-digit value") {
  const Ref ref = boost::math::constants::pi<Ref>();
  CHECK(Ref(pi().lower()) <= ref);
  CHECK(Ref(pi().upper()) >= ref);
}

TEST_CASE("random expression trees stay sound and tight") {
  const auto s = testsupport::run_trees(20000, 1234);
  CHECK(s.up_failures == 0);
  CHECK(s.down_failures == 0);
  CHECK(s.gap_failures == 0);
  MESSAGE("worst relative gap " << s.worst_gap);
}
