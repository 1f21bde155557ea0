#include "lbound/charkit.hpp"

#include "lbound/errors.hpp"
#include "lbound/primality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

namespace lbound {

namespace {

constexpr std::uint64_t kRootTableCap = std::uint64_t{1} << 21;
constexpr std::uint64_t kMaxPrefix = 100'000'000;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return result;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t smallest_primitive_root(std::uint64_t q) {
  const auto factors = prime_factors(q - 1);
  for (std::uint64_t g = 2; g < q; ++g) {
    const bool generates = std::all_of(factors.begin(), factors.end(), [&](std::uint64_t p) {
      return pow_mod(g, (q - 1) / p, q) != 1;
    });
    if (generates) return g;
  }
  return 1;  // q = 2
}

std::complex<double> unit_root(std::uint64_t k, std::uint64_t n) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k % n) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

double cross(std::complex<double> o, std::complex<double> a, std::complex<double> b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

}  // namespace

std::shared_ptr<const CharacterGroup> CharacterGroup::build(std::uint64_t q) {
  if (q < 3 || q > kMaxTabulatedModulus) {
    throw ResourceError("character tables need 3 <= q <= 10^7, got " + std::to_string(q));
  }
  if (!is_prime_trial(q)) throw InputError("modulus " + std::to_string(q) + " is not prime");

  auto group = std::shared_ptr<CharacterGroup>(new CharacterGroup());
  group->q_ = q;
  group->g_ = smallest_primitive_root(q);
  group->dlog_.assign(q, 0);
  std::uint64_t x = 1;
  for (std::uint64_t k = 0; k < q - 1; ++k) {
    group->dlog_[x] = static_cast<std::uint32_t>(k);
    x = x * group->g_ % q;
  }
  if (q - 1 <= kRootTableCap) {
    group->roots_.resize(q - 1);
    for (std::uint64_t k = 0; k < q - 1; ++k) group->roots_[k] = unit_root(k, q - 1);
  }
  return group;
}

std::complex<double> CharacterGroup::root(std::uint64_t k) const {
  if (!roots_.empty()) return roots_[k % order()];
  return unit_root(k, order());
}

DirichletCharacter::DirichletCharacter(std::shared_ptr<const CharacterGroup> group, std::uint64_t j)
    : group_(std::move(group)), j_(j) {
  if (!group_) throw InputError("character needs a group");
  if (j_ > group_->order() - 1) {
    throw InputError("character exponent " + std::to_string(j) + " outside [0, q-2]");
  }
}

std::complex<double> DirichletCharacter::operator()(std::uint64_t n) const {
  const std::uint64_t q = modulus();
  if (n % q == 0) return {0.0, 0.0};
  if (j_ == 0) return {1.0, 0.0};
  return group_->root(mul_mod(j_, group_->dlog(n), group_->order()));
}

DirichletCharacter DirichletCharacter::conjugate() const {
  return DirichletCharacter(group_, j_ == 0 ? 0 : group_->order() - j_);
}

DirichletCharacter make_character(std::uint64_t q, std::uint64_t j) {
  return DirichletCharacter(CharacterGroup::build(q), j);
}

std::complex<double> char_sum(const DirichletCharacter& chi, CharSumQuery query) {
  if (query.length == 0) throw InputError("character sum length must be >= 1");
  const std::uint64_t q = chi.modulus();
  const std::uint64_t periods = query.length / q;
  const std::uint64_t rest = query.length % q;
  std::complex<double> sum{chi.principal() ? static_cast<double>(periods * (q - 1)) : 0.0, 0.0};
  for (std::uint64_t i = 1; i <= rest; ++i) sum += chi(query.offset + i);
  return sum;
}

std::vector<std::complex<double>> prefix_sums(const DirichletCharacter& chi, std::uint64_t n_max) {
  if (n_max > kMaxPrefix) throw ResourceError("prefix table longer than 10^8 terms");
  std::vector<std::complex<double>> s(n_max + 1);
  for (std::uint64_t n = 1; n <= n_max; ++n) s[n] = s[n - 1] + chi(n);
  return s;
}

WindowMaximum max_char_sum(const DirichletCharacter& chi, std::uint64_t n_max) {
  if (n_max > kMaxWindowScan) throw ResourceError("window scan limited to N_max <= 10^6");
  if (n_max == 0) throw InputError("N_max must be >= 1");
  const std::uint64_t last = chi.principal() ? n_max : std::min(n_max, chi.modulus() - 1);
  const auto s = prefix_sums(chi, last);

  // Andrew's monotone chain over (S(n), n); collinear points dropped.
  std::vector<std::uint64_t> idx(s.size());
  for (std::uint64_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::uint64_t a, std::uint64_t b) {
    return std::tuple(s[a].real(), s[a].imag(), a) < std::tuple(s[b].real(), s[b].imag(), b);
  });
  std::vector<std::uint64_t> hull;
  if (idx.size() < 3) {
    hull = idx;
  } else {
    hull.resize(2 * idx.size());
    std::size_t k = 0;
    for (std::uint64_t i : idx) {
      while (k >= 2 && cross(s[hull[k - 2]], s[hull[k - 1]], s[i]) <= 0) --k;
      hull[k++] = i;
    }
    for (std::size_t t = idx.size() - 1, lower = k + 1; t-- > 0;) {
      const std::uint64_t i = idx[t];
      while (k >= lower && cross(s[hull[k - 2]], s[hull[k - 1]], s[i]) <= 0) --k;
      hull[k++] = i;
    }
    hull.resize(k - 1);
  }

  WindowMaximum best;
  best.window = {0, 1};
  best.modulus = std::abs(s[1] - s[0]);
  for (std::size_t a = 0; a < hull.size(); ++a) {
    for (std::size_t b = a + 1; b < hull.size(); ++b) {
      const std::uint64_t lo = std::min(hull[a], hull[b]);
      const std::uint64_t hi = std::max(hull[a], hull[b]);
      if (lo == hi) continue;
      const double d = std::abs(s[hi] - s[lo]);
      const CharSumQuery w{lo, hi - lo};
      if (d > best.modulus ||
          (d == best.modulus &&
           std::tie(w.offset, w.length) < std::tie(best.window.offset, best.window.length))) {
        best = {w, d};
      }
    }
  }
  return best;
}

double max_prefix_modulus(const DirichletCharacter& chi) {
  if (chi.principal()) throw InputError("prefix sums of the principal character are unbounded");
  double best = 0.0;
  std::complex<double> s{0.0, 0.0};
  for (std::uint64_t n = 1; n < chi.modulus(); ++n) {
    s += chi(n);
    best = std::max(best, std::abs(s));
  }
  return best;
}

}  // namespace lbound
