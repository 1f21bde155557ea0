// Dirichlet characters modulo a prime, via a primitive root and a
// discrete-log table.
#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

namespace lbound {

inline constexpr std::uint64_t kMaxTabulatedModulus = 10'000'000;

/// The cyclic group (Z/qZ)* for prime q: smallest primitive root and the
/// table n -> k with g^k = n (mod q). Immutable once built.
class CharacterGroup {
 public:
  static std::shared_ptr<const CharacterGroup> build(std::uint64_t q);

  std::uint64_t modulus() const { return q_; }
  std::uint64_t generator() const { return g_; }
  std::uint64_t order() const { return q_ - 1; }

  /// Discrete log of n mod q; n must be coprime to q.
  std::uint32_t dlog(std::uint64_t n) const { return dlog_[n % q_]; }

  /// exp(2 pi i k / (q-1)).
  std::complex<double> root(std::uint64_t k) const;

 private:
  CharacterGroup() = default;

  std::uint64_t q_ = 0;
  std::uint64_t g_ = 0;
  std::vector<std::uint32_t> dlog_;
  std::vector<std::complex<double>> roots_;  // empty above the table cap
};

/// chi(g^k) = exp(2 pi i j k / (q-1)).
class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const CharacterGroup> group, std::uint64_t j);

  std::uint64_t modulus() const { return group_->modulus(); }
  std::uint64_t exponent() const { return j_; }
  std::uint64_t generator() const { return group_->generator(); }
  bool principal() const { return j_ == 0; }
  bool real() const { return j_ == 0 || 2 * j_ == group_->order(); }
  const CharacterGroup& group() const { return *group_; }
  const std::shared_ptr<const CharacterGroup>& shared_group() const { return group_; }

  std::complex<double> operator()(std::uint64_t n) const;

  /// The character with exponent q-1-j (j for the principal character).
  DirichletCharacter conjugate() const;

 private:
  std::shared_ptr<const CharacterGroup> group_;
  std::uint64_t j_ = 0;
};

DirichletCharacter make_character(std::uint64_t q, std::uint64_t j);

struct CharSumQuery {
  std::uint64_t offset = 0;  // N0
  std::uint64_t length = 1;  // N1 >= 1
};

/// Sum of chi(n) over N0 < n <= N0 + N1.
std::complex<double> char_sum(const DirichletCharacter& chi, CharSumQuery query);

/// S(0), S(1), ..., S(n_max) with S(n) = sum_{k <= n} chi(k).
std::vector<std::complex<double>> prefix_sums(const DirichletCharacter& chi, std::uint64_t n_max);

struct WindowMaximum {
  CharSumQuery window;
  double modulus = 0.0;
};

inline constexpr std::uint64_t kMaxWindowScan = 1'000'000;

/// The window with N0 + N1 <= n_max maximising |char_sum|. The prefix sums
/// of a non-principal character are q-periodic, so only one period of
/// points is examined: the answer is the diameter of that point set.
WindowMaximum max_char_sum(const DirichletCharacter& chi, std::uint64_t n_max);

/// max_k |S(k)| over one period (all k for a non-principal character).
double max_prefix_modulus(const DirichletCharacter& chi);

}  // namespace lbound
