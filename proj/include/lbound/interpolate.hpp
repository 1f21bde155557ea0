// Phragmen-Lindelof interpolation between two vertical-line bounds and the
// resulting bounds inside the critical strip.
#pragma once

#include "lbound/bounds.hpp"

#include <json.hpp>

#include <utility>

namespace lbound {

/// |f(a+it)| <= A |Q+s|^alpha and |f(b+it)| <= B |Q+s|^beta.
struct PLStrip {
  double a = 0.0;
  double b = 1.0;
  Bracket A = Bracket::exact(1.0);
  double alpha = 0.0;
  Bracket B = Bracket::exact(1.0);
  double beta = 0.0;
  double Q = 0.0;
};

/// (A|Q+s|^alpha)^{(b-sigma)/(b-a)} (B|Q+s|^beta)^{(sigma-a)/(b-a)}.
/// RangeError for sigma outside [a, b]; HypothesisError when alpha < beta,
/// a >= b or Q + a <= 0.
Bracket pl_combine_enclosure(const PLStrip& strip, double sigma, double t);
UpperReal pl_combine(const PLStrip& strip, double sigma, double t);

/// K c^sigma shape(sigma, t) q^{u - v sigma} (log q)^{x - y sigma} on [sigma_a, sigma_b].
struct PowerFormBound {
  Bracket K;
  Bracket c;
  Rational u{0}, v{0};
  Rational x{0}, y{0};
  Rational sigma_a{0}, sigma_b{1};
  std::string line_a, line_b;

  Rational q_exp(Rational sigma) const { return u - v * sigma; }
  Rational log_exp(Rational sigma) const { return x - y * sigma; }
};

/// Exact affine exponents, c = (C_B/C_A)^{1/(sigma_B - sigma_A)}, K = C_A c^{-sigma_A}.
/// InputError unless lineA.sigma0 < lineB.sigma0.
PowerFormBound pl_power_form(const VerticalLineBound& lineA, const VerticalLineBound& lineB);

/// RangeError outside [sigma_a, sigma_b].
Bracket evaluate_power_form(const PowerFormBound& form, const Modulus& q, double sigma, double t,
                            LineShape shape = LineShape::sigma_plus_abs_t);

/// The same combination computed as a Rademacher product of the two lines at this q.
PLStrip strip_from_lines(const VerticalLineBound& lineA, const VerticalLineBound& lineB, const Modulus& q);

nlohmann::json to_json(const PowerFormBound& form);

/// A printed K c^sigma pair set against the one re-derived from its lines.
struct RegimeReport {
  std::string name;
  PowerFormBound derived;
  std::string printed_K, printed_c;
  DecimalCeil K_rounded, c_rounded;
  /// K c^{sigma_end} at the endpoint shared with the half-line, for printed and derived constants.
  double endpoint_sigma = 0.5;
  double endpoint_target = 0.918;
  double printed_endpoint = 0.0;
  double derived_endpoint = 0.0;
  bool printed_passes = false;  // within [0.917, 0.920]
  bool derived_passes = false;
};

/// sigma in [1/2, 9/10] from the half-line and r = 10 lines.
RegimeReport middle_regime_report();
/// sigma in [1/10, 1/2] from the sigma = 1/10 and half-line lines.
RegimeReport third_regime_report();

/// Piecewise bound for sigma in [1/10, 9/10] from the published lines.
/// The certificate is marked invalid when a published constant falls below
/// the bracket it stands for at this q.
BoundCertificate theorem_main_bound(const Modulus& q, double sigma, double t, EvalPolicy policy = {});

/// 1 + 1/epsilon; DomainError for epsilon <= 0.
UpperReal zeta_upper(double epsilon);

/// Exponents (1+e-s)/(1/10+e) and (s-9/10)/(1/10+e).
std::pair<Rational, Rational> oneline_exponents(Rational sigma, Rational epsilon);

/// (0.792 |9/10+it| q^{11/400} (log q)^{21/20})^{(1+e-s)/(1/10+e)} (1+1/e)^{(s-9/10)/(1/10+e)}.
BoundCertificate theorem_oneline_bound(const Modulus& q, double sigma, double t, double epsilon,
                                       EvalPolicy policy = {});

struct EpsilonChoice {
  double epsilon = 0.0;
  UpperReal value;
};

/// Golden-section search in log epsilon over [max(1e-6, sigma - 1), 10].
EpsilonChoice optimize_epsilon(const Modulus& q, double t, double sigma = 1.0);

}  // namespace lbound
