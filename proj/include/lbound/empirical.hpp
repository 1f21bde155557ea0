// Desk-scale L-values with rigorous truncation error, for comparing the
// bounds against actual values at small prime moduli.
#pragma once

#include "lbound/charkit.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace lbound {

enum class TailMethod {
  /// K-fold summation by parts against zero-mean periodic sums; the
  /// remainder is H_K |s(s+1)...(s+K-1)| N^{1-sigma-K}/(sigma+K-1).
  iterated,
  /// H (sigma+|t|) N^{-sigma}/sigma + |S(N)| N^{-sigma} with H the exact
  /// maximum of |S| over a period.
  endbound_exact,
  /// Same with H = P sqrt(q) log q.
  endbound_polya,
};

struct LValueOptions {
  TailMethod method = TailMethod::iterated;
  int order = 3;                       // K for the iterated method
  std::uint64_t budget = 100'000'000;  // terms
  std::uint64_t start_terms = 0;       // 0: the power of two >= 2q
};

struct LValueEnclosure {
  std::complex<double> center;
  double radius = 0.0;
  std::uint64_t terms_used = 0;
  bool budget_exhausted = false;
  /// Doubling stopped because the radius no longer shrank (floating-point floor).
  bool stalled = false;
  /// (N, radius) for each accepted doubling.
  std::vector<std::pair<std::uint64_t, double>> history;

  double abs_lower() const;
  double abs_upper() const;
};

/// Residue-class sums Z_a = sum_{n <= N, n = a mod q} n^{-s}, shared by all
/// characters of one modulus.
class DirichletSeriesCache {
 public:
  DirichletSeriesCache(std::uint64_t q, double sigma, double t);

  void extend_to(std::uint64_t n);
  std::uint64_t terms() const { return n_; }
  std::uint64_t modulus() const { return q_; }
  double sigma() const { return sigma_; }
  double t() const { return t_; }

  /// sum_{n <= N} chi(n) n^{-s} and an upper bound on its floating-point error.
  std::complex<double> partial_sum(const DirichletCharacter& chi, double* error) const;

 private:
  std::uint64_t q_;
  double sigma_, t_;
  std::uint64_t n_ = 0;
  std::vector<double> re_, im_, re_c_, im_c_;
  double abs_sum_ = 0.0;
  double max_log_ = 0.0;
};

/// L(sigma + it, chi) for non-principal chi; N doubles until the radius is
/// at most target_radius or the term budget is reached.
LValueEnclosure l_value(const DirichletCharacter& chi, double sigma, double t, double target_radius,
                        const LValueOptions& options = {});
LValueEnclosure l_value(const DirichletCharacter& chi, DirichletSeriesCache& cache, double target_radius,
                        const LValueOptions& options = {});

/// H (sigma+|t|) N^{-sigma}/sigma + |S(N)| N^{-sigma}, rounded up.
double endbound_radius(double prefix_bound, double sigma, double t, std::uint64_t n, double abs_prefix_n);

/// P sqrt(q) log q, rounded up.
double polya_vinogradov_prefix_bound(std::uint64_t q);

struct TruthOptions {
  std::size_t max_characters = 0;  // 0: every non-principal character
  double target_radius = 1e-6;
  LValueOptions lvalue;
};

struct TruthRow {
  std::uint64_t q = 0;
  std::uint64_t j = 0;
  double sigma = 0.0;
  double t = 0.0;
  double l_abs_lower = 0.0;
  double l_abs_upper = 0.0;
  std::string formula_id;
  double bound_value = 0.0;
  double ratio = 0.0;  // bound_value / l_abs_upper
  bool observational = true;
};

/// One row per (character, formula id) with that formula's smallest value.
std::vector<TruthRow> bound_vs_truth(const std::vector<std::uint64_t>& q_list, double sigma, double t,
                                     const TruthOptions& options = {});

/// Characters used for a modulus: all, or max_characters evenly spaced exponents.
std::vector<std::uint64_t> sampled_exponents(std::uint64_t q, std::size_t max_characters);

struct RatioSummary {
  std::uint64_t q = 0;
  std::string formula_id;
  std::size_t count = 0;
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
  std::size_t violations = 0;  // bound < l_abs_lower
};

std::vector<RatioSummary> summarize(const std::vector<TruthRow>& rows);

inline constexpr const char* kTruthCsvHeader =
    "q,j,sigma,t,l_abs_lower,l_abs_upper,formula_id,bound_value,ratio,observational_flag";

}  // namespace lbound
