// Explicit upper bounds for |L(sigma + it, chi)|, chi non-principal mod a
// prime q, obtained from partial summation against Burgess-type character
// sum estimates. Every formula is evaluated with outward rounding.
#pragma once

#include "lbound/certificate.hpp"
#include "lbound/primality.hpp"
#include "lbound/roundmath.hpp"

#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lbound {

/// Smallest modulus for which the Burgess constants are proven.
inline constexpr double kQMin = 1e10;

/// A modulus as exact decimal text plus its binary64 enclosure.
struct Modulus {
  std::string decimal;
  Bracket value;
  PrimalityMethod primality = PrimalityMethod::none;

  static Modulus from_decimal(std::string text);
  static Modulus from_integer(std::uint64_t q);
  static Modulus power_of_ten(int k);

  bool at_least_qmin() const { return value.lower() >= kQMin; }
  Bracket log() const { return lbound::log(value); }
};

/// When the query lies outside a formula's proven range (q < 10^10) the
/// formula is still evaluated if `allow_observational` is set; the
/// certificate then carries valid = false and an "observational" reason.
struct EvalPolicy {
  bool allow_observational = false;
};

/// "" when q >= 10^10 and |t| >= 1; otherwise the observational reason, or a
/// ValidityError naming `what` when the policy does not allow it.
std::string domain_reason(const Modulus& q, double t, EvalPolicy policy, const char* what);

struct BurgessData {
  int r = 3;
  Bracket B;
  std::string B_text;
  /// Exponent on log q in the character sum estimate.
  Rational log_exponent{1, 6};
  std::string provenance;
};

/// B(r) from the published Table 1 column with log exponent 1/(2r). For
/// r = 2 this form is only valid for sums shorter than 2 q^{5/8}.
BurgessData burgess_theorem_form(int r);
/// The r = 2 estimate with (log q)^{1/2}, B(2) = 1.520, no length limit.
BurgessData burgess_bb2();
/// Same shape with the four-decimal B(2) = 1.5197 listed in Table 1.
BurgessData burgess_bb2_table();

/// Polya-Vinogradov constant P = 2/pi^2 + 1/log(10^10).
UpperReal pv_constant();
Bracket pv_constant_enclosure();

/// B N1^{1-1/r} q^{(r+1)/(4r^2)} (log q)^{log_exponent}.
/// Throws ValidityError for the r = 2 theorem form when N1 >= 2 q^{5/8}.
UpperReal burgess_rhs(const BurgessData& data, const Modulus& q, double n1);
Bracket burgess_rhs_enclosure(const BurgessData& data, const Modulus& q, const Bracket& n1);
/// False when q < 10^10 (the estimate is then only observational).
bool burgess_certified(const Modulus& q);

/// u -> coefficient * u^exponent, an upper bound for max prefix |sum chi|.
struct PowerLawSum {
  Bracket coefficient;
  Rational exponent{0};
};

/// The Burgess bound as a function of the prefix length.
PowerLawSum burgess_prefix_bound(const BurgessData& data, const Modulus& q);

/// Four-term partial summation bound
///   M^{1-s}/|1-s| + M^{-s} S(M) + (s+|t|) P sqrt(q) log q N^{-s}/s
///   + (s+|t|) int_M^N S(u) u^{-1-s} du,
/// with the integral in closed form for a power-law S.
UpperReal lemma_partsum_bound(const Modulus& q, double sigma, double t, const Bracket& M,
                              const Bracket& N, const PowerLawSum& charsum, const Bracket& P);
Bracket lemma_partsum_enclosure(const Modulus& q, const Bracket& sigma, double t, const Bracket& M,
                                const Bracket& N, const PowerLawSum& charsum, const Bracket& P);

/// Parameter choices for the partial summation split.
enum class MNRule {
  printed,     // exactly as stated in the proof
  consistent,  // the off-line M that reproduces the two-line bound
};

struct ParameterChoice {
  bool on_line = false;
  Rational M_q_exp, M_log_exp, N_q_exp, N_log_exp;
  Bracket M, N;
};

/// sigma == 1 - 1/r selects the on-line case.
bool is_on_line(int r, double sigma);
ParameterChoice choose_MN(int r, double sigma, const Modulus& q, MNRule rule = MNRule::printed);
/// M = q^{3/8} log q, N = q^{5/8} (log q)^3: the split behind the half-line bracket.
ParameterChoice halfline_MN(const Modulus& q);

/// Which displayed bound a parameter choice actually produces.
struct ChoiceReport {
  int r = 0;
  double sigma = 0.0;
  MNRule rule = MNRule::printed;
  double lemma_value = 0.0;
  double off_display_value = 0.0;  // NaN on the line
  double on_display_value = 0.0;   // NaN off the line
  std::string reproduces;          // "off-line display", "on-line display" or "neither"
};
ChoiceReport report_MN_choice(int r, double sigma, const Modulus& q, double t, MNRule rule);

// ---------------------------------------------------------------------------
// Vertical-line constants C in |L| <= C (sigma + |t|) q^beta (log q)^gamma.

/// Half-line bracket
///   B(2)(1/4 + 2 log log q / log q) + (2 + B(2))/((1/2 + |t|) log q) + 2P/(log q)^2.
Bracket halfline_constant(const Modulus& q, double t, const BurgessData& bb2 = burgess_bb2());
/// r >= 3, sigma = 1 - 1/r:
///   (r + B)/((s+|t|) log q) + P/(s log q) + B(1/4 + log log q/(2 s log q)).
Bracket online_constant(const BurgessData& data, const Modulus& q, double t);
/// sigma = 1/r < 1/2 with the (log q)^{1/2} r = 2 estimate:
///   ((1/(1-s) + B)/(s+|t|) + 2B/(2s-1)) q^{(2s-1)/8} (log q)^{2s-1} + P/s - 2B/(2s-1).
Bracket table2_constant(const Bracket& sigma, const Modulus& q, double t,
                        const BurgessData& bb2 = burgess_bb2());

enum class LineShape {
  sigma_plus_abs_t,  // (sigma0 + |t|)
  modulus,           // |sigma0 + it|
};

struct VerticalLineBound {
  std::string label;
  Rational sigma0{1, 2};
  Bracket C;
  Rational beta{0};
  Rational gamma{0};
  double t_min = 1.0;
  double q_min = kQMin;
  double q_max = std::numeric_limits<double>::infinity();
  LineShape shape = LineShape::sigma_plus_abs_t;
  std::string provenance;
};

Bracket shape_factor(LineShape shape, const Bracket& sigma, double t);
/// C * shape(sigma0, t) * q^beta * (log q)^gamma.
Bracket evaluate_line(const VerticalLineBound& line, const Modulus& q, double t);

enum class LineFamily {
  table1,  // sigma = 1 - 1/r, r = 2..10
  table2,  // sigma = 1/r, r = 3..10
};

enum class ConstantSet {
  certified,           // B(2) = 1.520 throughout
  table_reproduction,  // Table 2 rows with B(2) = 1.5197
};

Rational line_sigma(LineFamily family, int r);
Rational line_beta(LineFamily family, int r);
Rational line_gamma(LineFamily family, int r);
std::string line_label(LineFamily family, int r);

/// The bracket of one family member at (q, t).
Bracket line_constant(LineFamily family, int r, const Modulus& q, double t,
                      ConstantSet set = ConstantSet::certified);

/// The line with C evaluated at this q and |t| = 1; valid for that q and all
/// |t| >= 1 because every bracket is decreasing in |t|.
VerticalLineBound vertical_line_at(LineFamily family, int r, const Modulus& q,
                                   ConstantSet set = ConstantSet::certified);

/// Constant-bracket maximality probe on q in {10^10, ..., 10^30} x |t| in {1, 10, 10^3}.
struct GridCheck {
  bool max_at_corner = false;
  double corner_value = 0.0;
  double grid_max = 0.0;
  int q_exponent_at_max = 10;
  double t_at_max = 1.0;
};

GridCheck grid_check(LineFamily family, int r, ConstantSet set = ConstantSet::table_reproduction);

struct DerivedLine {
  VerticalLineBound line;      // C = bracket at (10^10, 1)
  DecimalCeil C_rounded;       // rounded up at the third decimal
  GridCheck grid;
  Bracket uniform_sup;         // sup over q >= 10^10, |t| >= 1
};

DerivedLine derive_vertical_constant(LineFamily family, int r,
                                     ConstantSet set = ConstantSet::table_reproduction);

/// Published lines used to state the main theorem.
enum class PublishedLine { halfline, r10, sigma_tenth };
VerticalLineBound published_line(PublishedLine which);
/// Any printed Table 1 / Table 2 row as a line.
VerticalLineBound published_table_line(LineFamily family, int r);
std::string published_C_text(LineFamily family, int r);

struct TableRow {
  std::string table;
  std::string key;
  std::string paper_C;
  DecimalCeil derived_C;
  bool match = false;  // |derived - paper| <= 0.001
  Rational beta, gamma;
  Rational paper_beta, paper_gamma;
  bool exponents_match = false;
  bool grid_ok = false;
  double uniform_sup = 0.0;
  /// Rows that may be reported without failing the reproduction.
  bool advisory = false;
  std::string note;
};

std::vector<TableRow> table1();
std::vector<TableRow> table2();

// ---------------------------------------------------------------------------
// Certified evaluations.

/// Half-line bound: bracket * (1/2 + |t|) q^{3/16} (log q)^{3/2}.
BoundCertificate halfline_r2_bound(const Modulus& q, double t, EvalPolicy policy = {});
/// On-line bound at sigma = 1 - 1/r, r >= 3.
BoundCertificate prop_on_bound(const BurgessData& data, const Modulus& q, double t,
                               EvalPolicy policy = {});
/// Two-line bound for sigma != 1 - 1/r. With the (log q)^{1/2} r = 2 data and
/// sigma < 1/2 this is the log-adjusted form behind Table 2.
BoundCertificate prop_off_bound(const BurgessData& data, double sigma, const Modulus& q, double t,
                                EvalPolicy policy = {});

/// The exponent printed for the on-line case versus the one its proof gives.
struct OnLineExponentReport {
  int r = 0;
  Rational printed;  // 1/2 - s/2 + s^2/4
  Rational derived;  // (r+1)/(4r^2)
  Rational table;    // Table 1 beta_r
};
OnLineExponentReport on_line_exponent_report(int r);

enum class Comparator { hiary, convexity };
Comparator comparator_from_string(std::string_view name);
std::string to_string(Comparator kind);

/// 4 q^{1/4} sqrt(tau log q) or (q tau)^{(1-sigma)/2}, tau = |t| + 1.
UpperReal comparison_bound(const Modulus& q, double t, Comparator kind, double sigma = 0.5);
BoundCertificate comparison_certificate(const Modulus& q, double sigma, double t, Comparator kind);

}  // namespace lbound
