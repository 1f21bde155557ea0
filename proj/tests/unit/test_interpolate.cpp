#include "lbound/errors.hpp"
#include "lbound/interpolate.hpp"

#include "../support/two_path.hpp"

#include <boost/math/special_functions/zeta.hpp>
#include <doctest.h>

#include <cmath>
#include <vector>

using namespace lbound;

namespace {

const Modulus& q10() {
  static const Modulus q = Modulus::power_of_ten(10);
  return q;
}

}  // namespace

TEST_CASE("Rademacher combination hypotheses") {
  PLStrip s;
  s.a = 0.5;
  s.b = 0.9;
  s.A = Bracket::exact(10.0);
  s.B = Bracket::exact(2.0);
  s.alpha = s.beta = 1.0;
  CHECK_NOTHROW(pl_combine(s, 0.7, 1.0));
  CHECK_THROWS_AS(pl_combine(s, 0.4, 1.0), RangeError);
  CHECK_THROWS_AS(pl_combine(s, 0.95, 1.0), RangeError);
  PLStrip bad = s;
  bad.a = 0.9;
  CHECK_THROWS_AS(pl_combine(bad, 0.9, 1.0), HypothesisError);
  bad = s;
  bad.Q = -0.6;
  CHECK_THROWS_AS(pl_combine(bad, 0.7, 1.0), HypothesisError);
  bad = s;
  bad.alpha = 0.5;
  CHECK_THROWS_AS(pl_combine(bad, 0.7, 1.0), HypothesisError);

  // endpoints return the input bounds
  const double mod = std::hypot(0.5, 1.0);
  CHECK(pl_combine(s, 0.5, 1.0).value() == doctest::Approx(10.0 * mod).epsilon(1e-14));
  CHECK(pl_combine(s, 0.9, 1.0).value() == doctest::Approx(2.0 * std::hypot(0.9, 1.0)).epsilon(1e-14));
  CHECK(pl_combine(s, 0.7, 1.0).is_up());
}

TEST_CASE("middle regime power form") {
  const PowerFormBound f =
      pl_power_form(published_line(PublishedLine::halfline), published_line(PublishedLine::r10));
  CHECK(f.u == Rational(31, 80));
  CHECK(f.v == Rational(2, 5));
  CHECK(f.x == Rational(33, 16));
  CHECK(f.y == Rational(9, 8));
  CHECK(f.K.upper() >= 1.103);
  CHECK(f.K.upper() <= 1.106);
  CHECK(f.c.upper() >= 0.691);
  CHECK(f.c.upper() <= 0.693);
}

TEST_CASE("third regime power form") {
  const PowerFormBound f =
      pl_power_form(published_line(PublishedLine::sigma_tenth), published_line(PublishedLine::halfline));
  CHECK(f.u == Rational(1, 2));
  CHECK(f.v == Rational(5, 8));
  CHECK(f.x == Rational(7, 4));
  CHECK(f.y == Rational(1, 2));
  CHECK(f.K.upper() == doctest::Approx(10.09).epsilon(1e-3));
  CHECK(f.c.upper() > 0.0082);
  CHECK(f.c.upper() < 0.0083);

  const RegimeReport rep = third_regime_report();
  CHECK_FALSE(rep.printed_passes);
  CHECK(rep.derived_passes);
  CHECK(rep.printed_c == "0.083");
}

TEST_CASE("power form reproduces its lines at the endpoints") {
  for (auto [a, b] : {std::pair{PublishedLine::halfline, PublishedLine::r10},
                      std::pair{PublishedLine::sigma_tenth, PublishedLine::halfline}}) {
    const VerticalLineBound A = published_line(a), B = published_line(b);
    const PowerFormBound f = pl_power_form(A, B);
    for (double t : {1.0, 30.0}) {
      const double va = evaluate_power_form(f, q10(), to_double(A.sigma0), t, A.shape).upper();
      const double vb = evaluate_power_form(f, q10(), to_double(B.sigma0), t, B.shape).upper();
      CHECK(va == doctest::Approx(evaluate_line(A, q10(), t).upper()).epsilon(1e-3));
      CHECK(vb == doctest::Approx(evaluate_line(B, q10(), t).upper()).epsilon(1e-3));
    }
    CHECK_THROWS_AS(evaluate_power_form(f, q10(), 0.95, 1.0), RangeError);
  }
  CHECK_THROWS_AS(pl_power_form(published_line(PublishedLine::r10), published_line(PublishedLine::halfline)),
                  InputError);
}

TEST_CASE("two evaluation paths agree") {
  const auto s = testsupport::run_two_path(1000, 99);
  CHECK(s.failures == 0);
  MESSAGE("worst relative difference " << s.worst);
}

TEST_CASE("log-convexity in sigma for the modulus shape") {
  const PowerFormBound f =
      pl_power_form(published_line(PublishedLine::halfline), published_line(PublishedLine::r10));
  for (double t : {1.0, 4.0, 250.0}) {
    std::vector<double> grid, lf;
    for (int i = 0; i < 50; ++i) grid.push_back(0.5 + 0.4 * i / 49.0);
    for (double s : grid) lf.push_back(std::log(evaluate_power_form(f, q10(), s, t, LineShape::modulus).mid()));
    for (int i = 0; i < 50; ++i) {
      for (int j = i + 2; j < 50; j += 2) {
        const double mid = std::log(evaluate_power_form(f, q10(), 0.5 * (grid[i] + grid[j]), t, LineShape::modulus).mid());
        CHECK(mid <= 0.5 * (lf[i] + lf[j]) + 1e-12);
      }
    }
  }
}

TEST_CASE("zeta(1 + epsilon) upper bound") {
  for (double e : {0.01, 0.1, 1.0}) {
    const double z = boost::math::zeta(1.0 + e);
    CHECK(zeta_upper(e).value() >= z);
    CHECK(zeta_upper(e).value() == doctest::Approx(1.0 + 1.0 / e));
  }
  CHECK_THROWS_AS(zeta_upper(0.0), DomainError);
  CHECK_THROWS_AS(zeta_upper(-1.0), DomainError);
}

TEST_CASE("near-one bound endpoints and exponents") {
  const Modulus q = Modulus::from_decimal("10000000019");
  VerticalLineBound r10 = published_line(PublishedLine::r10);
  r10.shape = LineShape::modulus;
  for (double e : {0.01, 0.1, 0.5}) {
    const double at_line = theorem_oneline_bound(q, 0.9, 2.0, e).upper();
    CHECK(at_line == doctest::Approx(evaluate_line(r10, q, 2.0).upper()).epsilon(1e-9));
    const double at_right = theorem_oneline_bound(q, 1.0 + e, 2.0, e).upper();
    CHECK(at_right == doctest::Approx(1.0 + 1.0 / e).epsilon(1e-9));
  }
  for (Rational e : {Rational(1, 100), Rational(1, 10), Rational(3, 7), Rational(2)}) {
    const auto [a, b] = oneline_exponents(Rational(1), e);
    CHECK(a == 10 * e / (1 + 10 * e));
    CHECK(b == 1 / (1 + 10 * e));
  }
}

TEST_CASE("epsilon optimisation finds the grid minimum") {
  const Modulus q = Modulus::from_decimal("10000000019");
  const EpsilonChoice best = optimize_epsilon(q, 1.0);
  for (double e = 0.01; e < 5.0; e *= 1.15) {
    CHECK(best.value.value() <= theorem_oneline_bound(q, 1.0, 1.0, e).upper() * (1 + 1e-9));
  }
  CHECK(best.value.value() == doctest::Approx(theorem_oneline_bound(q, 1.0, 1.0, best.epsilon).upper()));
}

TEST_CASE("main theorem regimes") {
  const Modulus q = Modulus::from_decimal("10000000019");
  const BoundCertificate mid = theorem_main_bound(q, 0.7, 1.0);
  CHECK(mid.valid);
  const BoundCertificate half = theorem_main_bound(q, 0.5, 1.0);
  CHECK(half.valid);
  CHECK(half.upper() == doctest::Approx(evaluate_line(published_line(PublishedLine::halfline), q, 1.0).upper()));
  // the published sigma = 1/10 constant sits below its bracket with B(2) = 1.520
  CHECK_FALSE(theorem_main_bound(q, 0.3, 1.0).valid);
}
