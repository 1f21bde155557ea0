#include "lbound/primality.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <stdexcept>

namespace lbound {

namespace mp = boost::multiprecision;

std::string to_string(PrimalityMethod m) {
  switch (m) {
    case PrimalityMethod::trial_division: return "trial_division";
    case PrimalityMethod::strong_pseudoprime: return "strong_pseudoprime_bases_2_to_41";
    case PrimalityMethod::asserted: return "asserted_by_caller";
    case PrimalityMethod::none: return "none";
  }
  return "none";
}

bool is_prime_trial(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

bool strong_probable_prime(const mp::cpp_int& n, unsigned base) {
  const mp::cpp_int n1 = n - 1;
  mp::cpp_int d = n1;
  unsigned s = 0;
  while (!mp::bit_test(d, 0)) {
    d >>= 1;
    ++s;
  }
  mp::cpp_int x = mp::powm(mp::cpp_int(base), d, n);
  if (x == 1 || x == n1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = (x * x) % n;
    if (x == n1) return true;
  }
  return false;
}

}  // namespace

PrimalityVerdict check_prime(std::string_view decimal) {
  if (decimal.empty() || decimal.find_first_not_of("0123456789") != std::string_view::npos) {
    throw std::invalid_argument("modulus must be a decimal integer: '" + std::string(decimal) + "'");
  }
  const mp::cpp_int n{std::string(decimal)};
  if (n <= kTrialDivisionCap) {
    return {is_prime_trial(n.convert_to<std::uint64_t>()), PrimalityMethod::trial_division};
  }
  // Deterministic for n < 3317044064679887385961981 with the first 13 primes.
  static const mp::cpp_int kBound("3317044064679887385961981");
  if (n >= kBound) return {false, PrimalityMethod::none};
  constexpr std::array<unsigned, 13> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned b : kBases) {
    if (n % b == 0) return {false, PrimalityMethod::strong_pseudoprime};
  }
  for (unsigned b : kBases) {
    if (!strong_probable_prime(n, b)) return {false, PrimalityMethod::strong_pseudoprime};
  }
  return {true, PrimalityMethod::strong_pseudoprime};
}

}  // namespace lbound
