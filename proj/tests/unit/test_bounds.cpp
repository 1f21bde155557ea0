#include "lbound/bounds.hpp"
#include "lbound/errors.hpp"
#include "lbound/optimizer.hpp"

#include <boost/multiprecision/mpfr.hpp>
#include <doctest.h>

#include <cmath>

using namespace lbound;
using Ref = boost::multiprecision::mpfr_float_50;

namespace {

Ref ref_of(Rational r) { return Ref(r.numerator()) / Ref(r.denominator()); }

const Modulus& q10() {
  static const Modulus q = Modulus::power_of_ten(10);
  return q;
}

}  // namespace

TEST_CASE("Polya-Vinogradov constant") {
  const Ref exact = Ref(2) / (boost::math::constants::pi<Ref>() * boost::math::constants::pi<Ref>()) +
                    Ref(1) / (Ref(10) * log(Ref(10)));
  const UpperReal P = pv_constant();
  CHECK(P.is_up());
  CHECK(Ref(P.value()) >= exact);
  CHECK(static_cast<double>((Ref(P.value()) - exact) / exact) < 1e-14);
  CHECK(P.value() > 2.0 / (M_PI * M_PI));
  CHECK(P.value() < 0.25);
  CHECK(P.value() == doctest::Approx(0.24607).epsilon(1e-5));
}

TEST_CASE("Burgess right-hand side") {
  const BurgessData d3 = burgess_theorem_form(3);
  CHECK(d3.B_text == "2.4910");
  const UpperReal v = burgess_rhs(d3, q10(), 1e6);
  const Ref exact = Ref("2.4910") * pow(Ref(1e6), Ref(2) / 3) * pow(Ref(1e10), Ref(1) / 9) *
                    pow(log(Ref(1e10)), Ref(1) / 6);
  CHECK(Ref(v.value()) >= exact);
  CHECK(static_cast<double>((Ref(v.value()) - exact) / exact) < 1e-9);

  // N1 = 1 leaves only the q and log q factors
  const UpperReal one = burgess_rhs(d3, q10(), 1.0);
  CHECK(one.value() == doctest::Approx(2.491 * std::pow(1e10, 1.0 / 9) * std::pow(std::log(1e10), 1.0 / 6)));

  const BurgessData bb2 = burgess_bb2();
  CHECK(bb2.log_exponent == Rational(1, 2));
  CHECK(bb2.B.upper() == doctest::Approx(1.520));
  CHECK(burgess_rhs(bb2, q10(), 4.0).value() ==
        doctest::Approx(1.520 * 2.0 * std::pow(1e10, 3.0 / 16) * std::pow(std::log(1e10), 0.5)));

  // the theorem form at r = 2 only covers N1 < 2 q^{5/8}
  const BurgessData t2 = burgess_theorem_form(2);
  CHECK_NOTHROW(burgess_rhs(t2, q10(), 1e6));
  CHECK_THROWS_AS(burgess_rhs(t2, q10(), 2.0 * std::pow(1e10, 5.0 / 8) * 1.01), ValidityError);
}

TEST_CASE("partial summation bound") {
  const Bracket P = pv_constant_enclosure();
  const Bracket M = Bracket::exact(1e4), N = Bracket::exact(1e8);
  const PowerLawSum zero{Bracket::exact(0.0), Rational(0)};
  const double s = 2.0 / 3.0, t = 1.0;
  const double expect = std::pow(1e4, 1 - s) / (1 - s) +
                        (s + t) * P.upper() * std::sqrt(1e10) * std::log(1e10) * std::pow(1e8, -s) / s;
  CHECK(lemma_partsum_bound(q10(), s, t, M, N, zero, P).value() == doctest::Approx(expect).epsilon(1e-12));

  // M = N removes the integral
  const PowerLawSum burg = burgess_prefix_bound(burgess_theorem_form(3), q10());
  const double with_equal = lemma_partsum_bound(q10(), s, t, M, M, burg, P).value();
  const double S_M = burg.coefficient.upper() * std::pow(1e4, to_double(burg.exponent));
  const double expect_eq = std::pow(1e4, 1 - s) / (1 - s) + std::pow(1e4, -s) * S_M +
                           (s + t) * P.upper() * std::sqrt(1e10) * std::log(1e10) * std::pow(1e4, -s) / s;
  CHECK(with_equal == doctest::Approx(expect_eq).epsilon(1e-12));

  CHECK_THROWS(lemma_partsum_bound(q10(), 1.0, t, M, N, burg, P));
  CHECK_THROWS(lemma_partsum_bound(q10(), s, t, N, M, burg, P));
}

TEST_CASE("partial summation integral against a 50-digit quadrature-free reference") {
  // int_M^N c u^e u^{-1-s} du = c (N^{e-s} - M^{e-s})/(e-s)
  const PowerLawSum burg = burgess_prefix_bound(burgess_theorem_form(3), q10());
  const Bracket P = pv_constant_enclosure();
  const double s = 2.0 / 3.0, t = 1.0, m = 1e4, n = 1e8;
  const Ref S = Ref(s), c = Ref(burg.coefficient.upper()), e = ref_of(burg.exponent);
  const Ref exact = pow(Ref(m), 1 - S) / (1 - S) + pow(Ref(m), -S) * c * pow(Ref(m), e) +
                    (S + t) * Ref(P.upper()) * sqrt(Ref(1e10)) * log(Ref(1e10)) * pow(Ref(n), -S) / S +
                    (S + t) * c * (pow(Ref(n), e - S) - pow(Ref(m), e - S)) / (e - S);
  const double v = lemma_partsum_bound(q10(), s, t, Bracket::exact(m), Bracket::exact(n), burg, P).value();
  CHECK(Ref(v) >= exact * (1 - Ref(1e-15)));
  CHECK(static_cast<double>(abs(Ref(v) - exact) / exact) < 1e-9);
}

TEST_CASE("parameter choices") {
  const ParameterChoice on = choose_MN(2, 0.5, q10());
  CHECK(on.on_line);
  CHECK(on.M_q_exp == Rational(3, 8));
  CHECK(on.M_log_exp == Rational(1, 2));
  CHECK(on.N_q_exp == Rational(5, 8));
  CHECK(on.N_log_exp == Rational(3, 2));

  const ParameterChoice off = choose_MN(3, 0.3, q10());
  CHECK_FALSE(off.on_line);
  CHECK(off.M_q_exp == Rational(4, 30));
  CHECK(off.M_log_exp == Rational(1, 2));
  CHECK(off.N_q_exp == Rational(7, 12));
  CHECK(off.N_log_exp == Rational(5, 4));

  for (int k : {10, 20, 100}) {
    const Modulus q = Modulus::power_of_ten(k);
    for (int r = 2; r <= 10; ++r) {
      for (double sigma : {0.3, 1.0 - 1.0 / r}) {
        const ParameterChoice c = choose_MN(r, sigma, q);
        CHECK(c.M.upper() <= c.N.lower());
        CHECK(c.M.lower() > 0.0);
      }
    }
  }
}

TEST_CASE("off-line bound: second-line exponent is smaller above the line") {
  for (int r = 2; r <= 10; ++r) {
    for (int k = 1; k < 20; ++k) {
      const Rational sigma(k, 20);
      if (sigma <= Rational(r - 1, r)) continue;
      const Rational first = Rational(r + 1) * (1 - sigma) / Rational(4 * r);
      const Rational second = Rational(1, 2) - sigma * Rational(2 * r + 1) / Rational(4 * r);
      CHECK(second < first);
    }
  }
}

TEST_CASE("off-line bound stays finite near the line and converges to the on-line bound") {
  for (int r = 3; r <= 10; ++r) {
    const BurgessData d = burgess_theorem_form(r);
    const double line = 1.0 - 1.0 / r;
    const double on = prop_on_bound(d, q10(), 1.0).upper();
    for (double h : {1e-2, 1e-4, -1e-4, -1e-2}) {
      const BoundCertificate off = prop_off_bound(d, line + h, q10(), 1.0);
      CHECK(std::isfinite(off.upper()));
      CHECK(off.upper() >= 0.0);
    }
    // the 1/(sigma r - r + 1) poles cancel: both sides approach the on-line value
    for (double h : {1e-6, -1e-6}) {
      CHECK(prop_off_bound(d, line + h, q10(), 1.0).upper() == doctest::Approx(on).epsilon(1e-4));
    }
    CHECK(prop_off_bound(d, line - 1e-3, q10(), 1.0).upper() > on);
    CHECK(prop_off_bound(d, line + 1e-3, q10(), 1.0).upper() < on);
    CHECK_THROWS_AS(prop_off_bound(d, line, q10(), 1.0), CaseError);
  }
}

TEST_CASE("Table 2 sigma = 1/3 constant from the two-line form") {
  const DerivedLine d = derive_vertical_constant(LineFamily::table2, 3);
  CHECK(d.C_rounded.text == "8.934");
  CHECK(d.line.beta == Rational(7, 24));
  CHECK(d.line.gamma == Rational(1));
  const DerivedLine last = derive_vertical_constant(LineFamily::table2, 10);
  CHECK(last.C_rounded.text == "6.249");
  CHECK(last.line.beta == Rational(7, 16));
  CHECK(last.line.gamma == Rational(17, 10));
}

TEST_CASE("Table 1 on-line rows") {
  struct Row {
    int r;
    const char* C;
    Rational beta, gamma;
  };
  for (const Row& row : {Row{3, "1.037", {1, 9}, {7, 6}}, Row{5, "0.842", {3, 50}, {11, 10}},
                         Row{10, "0.792", {11, 400}, {21, 20}}}) {
    const DerivedLine d = derive_vertical_constant(LineFamily::table1, row.r);
    CHECK(d.C_rounded.text == std::string(row.C));
    CHECK(d.line.beta == row.beta);
    CHECK(d.line.gamma == row.gamma);
    CHECK(d.grid.max_at_corner);
  }
}

TEST_CASE("half-line bound") {
  const Bracket C = halfline_constant(q10(), 1.0);
  CHECK(ceil_decimal(C.upper(), 3).value() <= 0.918);
  CHECK(halfline_constant(q10(), 10.0).upper() < C.lower());
  const GridCheck g = grid_check(LineFamily::table1, 2, ConstantSet::certified);
  CHECK(g.max_at_corner);
  for (int k : {12, 20}) CHECK(halfline_constant(Modulus::power_of_ten(k), 1.0).upper() < C.lower());

  const BoundCertificate cert = halfline_r2_bound(q10(), 1.0);
  CHECK(cert.valid);
  const double shape = 1.5 * std::pow(1e10, 3.0 / 16) * std::pow(std::log(1e10), 1.5);
  CHECK(cert.upper() == doctest::Approx(C.upper() * shape).epsilon(1e-12));
  CHECK_THROWS_AS(halfline_r2_bound(Modulus::from_integer(1000003), 1.0), ValidityError);
  CHECK_FALSE(halfline_r2_bound(Modulus::from_integer(1000003), 1.0, {true}).valid);
}

TEST_CASE("printed on-line exponent disagrees with the table") {
  const OnLineExponentReport e = on_line_exponent_report(3);
  CHECK(e.printed == Rational(5, 18));
  CHECK(e.derived == Rational(1, 9));
  CHECK(e.table == Rational(1, 9));
  for (int r = 3; r <= 10; ++r) {
    const OnLineExponentReport x = on_line_exponent_report(r);
    CHECK(x.derived == x.table);
    CHECK(x.printed != x.table);
  }
}

TEST_CASE("parameter choice report") {
  const ChoiceReport printed = report_MN_choice(3, 0.3, q10(), 1.0, MNRule::printed);
  const ChoiceReport consistent = report_MN_choice(3, 0.3, q10(), 1.0, MNRule::consistent);
  CHECK(printed.reproduces == "neither");
  CHECK(consistent.reproduces == "off-line display");
  CHECK(report_MN_choice(4, 0.75, q10(), 1.0, MNRule::printed).reproduces.rfind("on-line display", 0) == 0);
}

TEST_CASE("comparators") {
  const double hiary0 = comparison_bound(q10(), 0.0, Comparator::hiary).value();
  CHECK(hiary0 == doctest::Approx(4.0 * std::pow(10.0, 2.5) * std::sqrt(std::log(1e10))).epsilon(1e-12));
  double prev = 0.0;
  for (double t : {0.0, 1.0, 5.0, 100.0}) {
    const double v = comparison_bound(q10(), t, Comparator::hiary).value();
    CHECK(v > prev);
    prev = v;
  }
  CHECK_FALSE(comparison_certificate(q10(), 0.5, 1.0, Comparator::convexity).certified);
  CHECK_THROWS_AS(comparator_from_string("davenport"), InputError);
}

TEST_CASE("certificates replay bit-identically through JSON") {
  const Modulus q = Modulus::from_decimal("10000000019");
  const std::vector<BoundCertificate> certs = {
      halfline_r2_bound(q, 3.0),
      prop_on_bound(burgess_theorem_form(4), q, 2.0),
      prop_off_bound(burgess_theorem_form(5), 0.61, q, 7.5),
      prop_off_bound(burgess_bb2(), 0.27, q, 1.0),
  };
  for (const auto& c : certs) {
    const BoundCertificate back = certificate_from_json(nlohmann::json::parse(to_json(c).dump()));
    CHECK(back.upper() == c.upper());
    CHECK(replay(back).upper() == c.upper());
  }
}
