#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace lbound {

enum class PrimalityMethod {
  trial_division,     // q <= 10^7
  strong_pseudoprime, // deterministic bases 2..41, q < 3.3e24
  asserted,           // caller vouches for primality
  none,
};

std::string to_string(PrimalityMethod m);

struct PrimalityVerdict {
  bool prime = false;
  PrimalityMethod method = PrimalityMethod::none;
};

inline constexpr std::uint64_t kTrialDivisionCap = 10'000'000;

bool is_prime_trial(std::uint64_t n);

/// Primality of a decimal integer. Uses trial division below 10^7 and a
/// deterministic strong-pseudoprime test (first 13 prime bases) below
/// 3.317e24. Larger inputs return method == none.
PrimalityVerdict check_prime(std::string_view decimal);

}  // namespace lbound
