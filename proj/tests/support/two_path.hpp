// Power-form versus direct Rademacher evaluation at random interior points.
#pragma once

#include "lbound/interpolate.hpp"

#include <random>
#include <string>

namespace testsupport {

struct TwoPathStats {
  long cases = 0;
  long failures = 0;
  double worst = 0.0;
};

// Line pairs drawn from the families the optimizer actually combines.
inline TwoPathStats run_two_path(long count, std::uint64_t seed) {
  using namespace lbound;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> lq(10.0, 40.0), lt(0.0, 4.0), u(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, 16);
  auto line = [](int k, const Modulus& q) {
    if (k < 8) return vertical_line_at(LineFamily::table2, 10 - k, q);
    if (k == 8) return vertical_line_at(LineFamily::table1, 2, q);
    return vertical_line_at(LineFamily::table1, k - 6, q);
  };
  TwoPathStats s;
  while (s.cases < count) {
    int ka = pick(rng), kb = pick(rng);
    if (ka == kb) continue;
    if (ka > kb) std::swap(ka, kb);
    std::string digits(static_cast<std::size_t>(lq(rng)), '0');
    for (auto& d : digits) d = static_cast<char>('0' + rng() % 10);
    digits[0] = static_cast<char>('1' + rng() % 9);
    const Modulus q = Modulus::from_decimal(digits);
    const VerticalLineBound A = line(ka, q), B = line(kb, q);
    const double sa = to_double(A.sigma0), sb = to_double(B.sigma0);
    const double sigma = sa + (sb - sa) * (0.01 + 0.98 * u(rng));
    const double t = std::pow(10.0, lt(rng));
    const Bracket direct = pl_combine_enclosure(strip_from_lines(A, B, q), sigma, t);
    const Bracket power = evaluate_power_form(pl_power_form(A, B), q, sigma, t, LineShape::modulus);
    const double rel = std::abs(power.mid() - direct.mid()) / direct.mid();
    ++s.cases;
    if (rel > s.worst) s.worst = rel;
    if (!(rel <= 1e-9)) ++s.failures;
  }
  return s;
}

}  // namespace testsupport
