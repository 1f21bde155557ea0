// Best available certified bound for a query, grid scans and certificate replay.
#pragma once

#include "lbound/interpolate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace lbound {

/// Primality checked by trial division (q <= 10^7) or strong pseudoprime
/// bases (q < 3.3e24); above that only `assume_prime` admits q and the
/// certificate records the assertion. InputError for composite or unverified q.
Modulus prime_modulus(const std::string& decimal, bool assume_prime = false);

struct BoundQuery {
  Modulus q;
  double sigma = 0.5;
  double t = 1.0;
  std::optional<double> epsilon;
  bool allow_observational = false;
};

/// "table1:r=K" or "table2:sigma=1/K" with C re-derived at this q (B(2) = 1.520).
VerticalLineBound line_from_label(const std::string& label, const Modulus& q);
/// Table 2 lines, the half-line and Table 1 r = 3..10, by increasing sigma.
std::vector<std::string> available_line_labels();

/// Power-form interpolation between two re-derived lines, (sigma+|t|) shape.
BoundCertificate pl_pair_bound(const Modulus& q, double sigma, double t, const std::string& line_a,
                               const std::string& line_b, EvalPolicy policy = {});

/// Partial summation bound with the Burgess prefix bound and explicit M, N.
BoundCertificate lemma_partsum_certificate(const BurgessData& data, const Modulus& q, double sigma, double t,
                                           double M, double N, EvalPolicy policy = {});

struct BestBound {
  std::optional<BoundCertificate> best;
  /// Every formula that evaluated, certified or not, in evaluation order.
  std::vector<BoundCertificate> candidates;
  /// Non-certified comparators, never eligible to win.
  std::vector<BoundCertificate> comparators;
  std::string reason;  // set when `best` is empty
};

BestBound best_bound(const BoundQuery& query);

/// Direct Table 1 line at sigma = 1 - 1/r against the (1/2, 9/10) interpolation.
struct DirectVsInterpolated {
  BoundCertificate direct;
  BoundCertificate interpolated;
  std::string winner;
};
DirectVsInterpolated direct_vs_interpolated(const Modulus& q, int r, double t);

inline constexpr std::size_t kScanBudget = 100'000;

struct ScanRow {
  std::string q;
  double sigma = 0.0;
  double t = 0.0;
  std::optional<BoundCertificate> cert;
  std::string reason;
};

struct ScanResult {
  std::vector<ScanRow> rows;
  /// Neighbouring sigma values at fixed (q, t) whose best bounds differ by more than 5%.
  std::vector<std::string> discontinuities;
};

/// Rows ordered q-major, then t, then sigma. ResourceError above kScanBudget points.
ScanResult scan(const std::vector<double>& sigma_grid, const std::vector<double>& t_grid,
                const std::vector<Modulus>& q_grid, std::optional<double> epsilon = std::nullopt);

/// Re-evaluates a formula from recorded inputs; validity is recomputed.
BoundCertificate evaluate(FormulaId id, const BoundInputs& inputs, EvalPolicy policy = {true});
BoundCertificate replay(const BoundCertificate& cert);

/// Smallest |t| in [t_lo, t_hi] where the main bound at sigma exceeds the Hiary comparator.
struct Crossover {
  bool found = false;
  bool at_lower_end = false;
  double at = 0.0;
  double theorem_value = 0.0;
  double hiary_value = 0.0;
};
Crossover hiary_crossover_t(const Modulus& q, double sigma, double t_lo, double t_hi);
/// log10 q where the half-line bound (0.918) meets the Hiary comparator at this |t|.
Crossover hiary_crossover_log10q(double t, double log10q_lo = 10.0, double log10q_hi = 60.0);

}  // namespace lbound
