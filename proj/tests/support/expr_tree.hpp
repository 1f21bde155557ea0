// Random positive expression trees evaluated twice: outward-rounded Brackets
// and a 50-digit MPFR reference.
#pragma once

#include "lbound/roundmath.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <random>

namespace testsupport {

using Ref = boost::multiprecision::mpfr_float_50;

struct Pair {
  lbound::Bracket b;
  Ref ref;
};

class TreeGen {
 public:
  explicit TreeGen(std::uint64_t seed) : rng_(seed) {}

  // Operands stay positive and moderate so the relative gap is meaningful:
  // no cancellation, no overflow.
  Pair make(int depth) {
    std::uniform_int_distribution<int> op(0, depth <= 0 ? 0 : 9);
    switch (op(rng_)) {
      case 0: {
        std::uniform_real_distribution<double> u(0.5, 100.0);
        const double v = u(rng_);
        return {lbound::Bracket::exact(v), Ref(v)};
      }
      case 1: {
        std::uniform_int_distribution<int> n(1, 99), d(1, 97);
        const lbound::Rational r(n(rng_), d(rng_));
        return {lbound::Bracket::of(r), Ref(r.numerator()) / Ref(r.denominator())};
      }
      case 2: {
        Pair a = make(depth - 1), b = make(depth - 1);
        return {a.b + b.b, a.ref + b.ref};
      }
      case 3: {
        Pair a = make(depth - 1), b = make(depth - 1);
        return {a.b * b.b, a.ref * b.ref};
      }
      case 4: {
        Pair a = make(depth - 1), b = make(depth - 1);
        return {a.b / b.b, a.ref / b.ref};
      }
      case 5: {
        Pair a = make(depth - 1);
        return {lbound::sqrt(a.b), sqrt(a.ref)};
      }
      case 6: {
        // log(2 + a) >= log 2 keeps the result away from zero.
        Pair a = make(depth - 1);
        const lbound::Bracket two = lbound::Bracket::exact(2.0);
        return {lbound::log(two + a.b), log(Ref(2) + a.ref)};
      }
      case 7: {
        // exp(1/(1 + a)) lies in (1, e).
        Pair a = make(depth - 1);
        const lbound::Bracket one = lbound::Bracket::exact(1.0);
        return {lbound::exp(one / (one + a.b)), exp(Ref(1) / (Ref(1) + a.ref))};
      }
      case 8: {
        std::uniform_int_distribution<int> n(-7, 7), d(1, 9);
        const lbound::Rational e(n(rng_), d(rng_));
        Pair a = make(depth - 1);
        const Ref er = Ref(e.numerator()) / Ref(e.denominator());
        return {lbound::pow(a.b, e), pow(a.ref, er)};
      }
      default: {
        // Products of sums: the typical shape of a bound formula.
        Pair a = make(depth - 1), b = make(depth - 1), c = make(depth - 1);
        return {(a.b + b.b) * c.b, (a.ref + b.ref) * c.ref};
      }
    }
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

struct TreeStats {
  long cases = 0;
  long up_failures = 0;
  long down_failures = 0;
  long gap_failures = 0;
  double worst_gap = 0.0;
};

inline TreeStats run_trees(long count, std::uint64_t seed, int max_depth = 5) {
  TreeGen gen(seed);
  std::uniform_int_distribution<int> depth(1, max_depth);
  TreeStats s;
  for (long i = 0; i < count; ++i) {
    const Pair p = gen.make(depth(gen.rng()));
    ++s.cases;
    if (Ref(p.b.upper()) < p.ref) ++s.up_failures;
    if (Ref(p.b.lower()) > p.ref) ++s.down_failures;
    const double gap = static_cast<double>((Ref(p.b.upper()) - p.ref) / abs(p.ref));
    if (gap > s.worst_gap) s.worst_gap = gap;
    if (!(gap < 1e-9)) ++s.gap_failures;
  }
  return s;
}

}  // namespace testsupport
