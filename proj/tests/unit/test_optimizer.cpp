#include "lbound/errors.hpp"
#include "lbound/optimizer.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace lbound;

namespace {

const Modulus& qp() {
  static const Modulus q = prime_modulus("10000000019");
  return q;
}

}  // namespace

TEST_CASE("modulus primality") {
  CHECK(qp().primality != PrimalityMethod::none);
  CHECK_THROWS_AS(prime_modulus("10000000018"), InputError);
  CHECK_THROWS_AS(prime_modulus("abc"), InputError);
  // beyond the deterministic range only an explicit assertion admits q
  const std::string big = "1000000000000000000000000000057";
  CHECK_THROWS_AS(prime_modulus(big), InputError);
  CHECK_NOTHROW(prime_modulus(big, true));
}

TEST_CASE("the best bound dominates every certified candidate") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> s(0.05, 1.0), lt(0.0, 3.0);
  for (int i = 0; i < 1000; ++i) {
    const BoundQuery query{qp(), s(rng), std::pow(10.0, lt(rng)), std::nullopt, false};
    const BestBound b = best_bound(query);
    REQUIRE(b.best.has_value());
    CHECK(b.best->valid);
    CHECK(b.best->certified);
    for (const auto& c : b.candidates) {
      if (c.valid && c.certified) CHECK(b.best->upper() <= c.upper());
    }
    for (const auto& c : b.comparators) CHECK_FALSE(c.certified);
  }
}

TEST_CASE("best bound is deterministic and replays") {
  for (double sigma : {0.2, 0.5, 0.75, 0.9, 1.0}) {
    const BoundQuery query{qp(), sigma, 3.0, std::nullopt, false};
    const BestBound a = best_bound(query), b = best_bound(query);
    REQUIRE(a.best);
    CHECK(a.best->formula == b.best->formula);
    CHECK(a.best->upper() == b.best->upper());
    CHECK(replay(*a.best).upper() == a.best->upper());
  }
}

TEST_CASE("sigma above one needs an explicit epsilon") {
  const BestBound none = best_bound({qp(), 1.2, 1.0, std::nullopt, false});
  CHECK_FALSE(none.best);
  CHECK_FALSE(none.reason.empty());
  const BestBound with = best_bound({qp(), 1.2, 1.0, 0.3, false});
  REQUIRE(with.best);
  CHECK(with.best->formula == FormulaId::theorem_oneline);
}

TEST_CASE("small moduli give no certified bound") {
  const BestBound b = best_bound({prime_modulus("1000003"), 0.5, 1.0, std::nullopt, false});
  CHECK_FALSE(b.best);
  const BestBound obs = best_bound({prime_modulus("1000003"), 0.5, 1.0, std::nullopt, true});
  CHECK_FALSE(obs.best);  // observational candidates never win
}

TEST_CASE("line labels") {
  const auto labels = available_line_labels();
  CHECK(labels.size() == 17);
  for (const auto& l : labels) CHECK(line_from_label(l, qp()).label == l);
  CHECK_THROWS_AS(line_from_label("table1:r=11", qp()), InputError);
  const BoundCertificate pl = pl_pair_bound(qp(), 0.7, 1.0, "table1:r=2", "table1:r=10");
  CHECK(pl.valid);
  CHECK_THROWS_AS(pl_pair_bound(qp(), 0.95, 1.0, "table1:r=2", "table1:r=10"), RangeError);
}

TEST_CASE("direct line against the interpolated bound") {
  const DirectVsInterpolated d = direct_vs_interpolated(qp(), 3, 1.0);
  CHECK(d.winner == "direct");
  CHECK(d.direct.upper() < d.interpolated.upper());
}

TEST_CASE("scan shape and budget") {
  const ScanResult r = scan({0.5, 0.75, 1.0}, {1.0, 10.0, 100.0}, {qp()});
  CHECK(r.rows.size() == 9);
  CHECK(r.rows[0].sigma == 0.5);
  CHECK(r.rows[1].sigma == 0.75);
  CHECK(r.rows[3].t == 10.0);
  for (const auto& row : r.rows) CHECK(row.cert);
  std::vector<double> big(1001, 0.5);
  CHECK_THROWS_AS(scan(big, std::vector<double>(100, 1.0), {qp()}), ResourceError);
}

TEST_CASE("evaluate by formula id") {
  BoundInputs in;
  in.q = "10000000019";
  in.sigma = 0.5;
  in.t = 2.0;
  const BoundCertificate h = evaluate(FormulaId::halfline_r2, in);
  CHECK(h.valid);
  in.r = 4;
  in.sigma = 0.75;
  CHECK(evaluate(FormulaId::prop_on, in).valid);
  in.sigma = 0.6;
  in.M = 1e3;
  in.N = 1e9;
  CHECK(evaluate(FormulaId::lemma_partsum, in).valid);
  in.sigma = 1.0;
  in.epsilon = 0.1;
  CHECK(evaluate(FormulaId::theorem_oneline, in).upper() ==
        doctest::Approx(theorem_oneline_bound(qp(), 1.0, 2.0, 0.1).upper()));
}

TEST_CASE("comparator crossovers") {
  const Crossover c = hiary_crossover_log10q(1.0);
  CHECK(c.found);
  CHECK(c.at > 14.0);
  CHECK(c.at < 15.0);
}
