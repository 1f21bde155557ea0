#include "lbound/charkit.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>

using namespace lbound;
using cd = std::complex<double>;

namespace {

// chi(n) straight from the definition: find k with g^k = n by walking powers.
cd naive_chi(std::uint64_t q, std::uint64_t g, std::uint64_t j, std::uint64_t n) {
  n %= q;
  if (n == 0) return 0.0;
  std::uint64_t p = 1;
  for (std::uint64_t k = 0; k < q - 1; ++k) {
    if (p == n) return std::polar(1.0, 2.0 * M_PI * static_cast<double>(j * k % (q - 1)) / (q - 1));
    p = p * g % q;
  }
  FAIL("no discrete log");
  return 0.0;
}

}  // namespace

TEST_CASE("smallest primitive roots") {
  CHECK(CharacterGroup::build(5)->generator() == 2);
  CHECK(CharacterGroup::build(7)->generator() == 3);
  CHECK(CharacterGroup::build(13)->generator() == 2);
  CHECK(CharacterGroup::build(23)->generator() == 5);
  CHECK(CharacterGroup::build(41)->generator() == 6);
  CHECK(CharacterGroup::build(101)->generator() == 2);
}

TEST_CASE("characters mod 13 match the definition") {
  for (std::uint64_t j = 0; j < 12; ++j) {
    const DirichletCharacter chi = make_character(13, j);
    for (std::uint64_t n = 0; n < 40; ++n) {
      CHECK(std::abs(chi(n) - naive_chi(13, 2, j, n)) < 1e-12);
    }
  }
}

TEST_CASE("multiplicativity, periodicity and orthogonality") {
  const std::uint64_t q = 101;
  for (std::uint64_t j : {1u, 7u, 50u, 99u}) {
    const DirichletCharacter chi = make_character(q, j);
    for (std::uint64_t a = 1; a < 60; a += 7) {
      for (std::uint64_t b = 1; b < 60; b += 5) {
        CHECK(std::abs(chi(a * b) - chi(a) * chi(b)) < 1e-12);
        CHECK(std::abs(chi(a + q) - chi(a)) < 1e-15);
      }
    }
    cd total = 0.0;
    for (std::uint64_t n = 0; n < q; ++n) total += chi(n);
    CHECK(std::abs(total) < 1e-10);
    const DirichletCharacter bar = chi.conjugate();
    for (std::uint64_t n = 1; n < 30; ++n) CHECK(std::abs(bar(n) - std::conj(chi(n))) < 1e-12);
  }
  CHECK(make_character(101, 50).real());
  CHECK(make_character(101, 0).principal());
  CHECK(make_character(101, 0)(202) == cd(0.0));
}

TEST_CASE("character sums match brute force on every window with N0 + N1 <= 200") {
  const std::uint64_t q = 101;
  for (std::uint64_t j : {1u, 2u, 25u, 50u, 77u}) {
    const DirichletCharacter chi = make_character(q, j);
    std::vector<cd> direct(201);
    for (std::uint64_t n = 1; n <= 200; ++n) direct[n] = naive_chi(q, 2, j, n);
    for (std::uint64_t n0 = 0; n0 < 200; ++n0) {
      cd brute = 0.0;
      for (std::uint64_t n1 = 1; n0 + n1 <= 200; ++n1) {
        brute += direct[n0 + n1];
        CHECK(std::abs(char_sum(chi, {n0, n1}) - brute) < 1e-9);
      }
    }
  }
}

TEST_CASE("maximum window sum equals the brute-force maximum") {
  for (std::uint64_t q : {13u, 31u}) {
    for (std::uint64_t j = 1; j < q - 1; j += 3) {
      const DirichletCharacter chi = make_character(q, j);
      const std::uint64_t n_max = 3 * q;
      const auto S = prefix_sums(chi, n_max);
      double best = 0.0;
      for (std::uint64_t a = 0; a <= n_max; ++a)
        for (std::uint64_t b = a + 1; b <= n_max; ++b) best = std::max(best, std::abs(S[b] - S[a]));
      const WindowMaximum w = max_char_sum(chi, n_max);
      CHECK(w.modulus == doctest::Approx(best).epsilon(1e-12));
      CHECK(w.window.offset + w.window.length <= n_max);
      CHECK(std::abs(char_sum(chi, w.window)) == doctest::Approx(best).epsilon(1e-12));

      double prefix = 0.0;
      for (std::uint64_t k = 0; k <= q; ++k) prefix = std::max(prefix, std::abs(S[k]));
      CHECK(max_prefix_modulus(chi) == doctest::Approx(prefix).epsilon(1e-12));
    }
  }
}

TEST_CASE("bad inputs") {
  CHECK_THROWS(make_character(15, 1));
  CHECK_THROWS(make_character(13, 12));
  CHECK_THROWS(char_sum(make_character(13, 1), {0, 0}));
}
