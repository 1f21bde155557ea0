#include "lbound/interpolate.hpp"

#include "lbound/errors.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace lbound {

namespace {

Bracket num(double v) { return Bracket::exact(v); }
Bracket rat(Rational r) { return Bracket::of(r); }

std::string rational_text(Rational r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << "/" << r.denominator();
  return os.str();
}

// Three significant digits, rounded up.
DecimalCeil ceil_3sig(double x) {
  const int lead = static_cast<int>(std::floor(std::log10(x)));
  return ceil_decimal(x, std::max(0, 2 - lead));
}

BoundCertificate start(FormulaId id, const Modulus& q, double sigma, double t) {
  BoundCertificate cert;
  cert.formula = id;
  cert.inputs.q = q.decimal;
  cert.inputs.sigma = sigma;
  cert.inputs.t = t;
  if (q.primality != PrimalityMethod::none) cert.inputs.extra["primality"] = to_string(q.primality);
  return cert;
}

void add_form_constants(BoundCertificate& cert, const PowerFormBound& form) {
  cert.add_constant("K", form.K.upper(), "derived: C_A c^{-sigma_A} from " + form.line_a + ", " + form.line_b);
  cert.add_constant("c", form.c.upper(), "derived: (C_B/C_A)^{1/(sigma_B - sigma_A)}");
  cert.add_constant("q_exp_u", to_double(form.u), "exact: " + rational_text(form.u));
  cert.add_constant("q_exp_v", to_double(form.v), "exact: " + rational_text(form.v));
  cert.add_constant("log_exp_x", to_double(form.x), "exact: " + rational_text(form.x));
  cert.add_constant("log_exp_y", to_double(form.y), "exact: " + rational_text(form.y));
}

}  // namespace

Bracket pl_combine_enclosure(const PLStrip& s, double sigma, double t) {
  if (!(s.a < s.b)) throw HypothesisError("PL strip needs a < b");
  if (!(s.Q + s.a > 0.0)) throw HypothesisError("PL strip needs Q + a > 0");
  if (s.alpha < s.beta) throw HypothesisError("PL strip needs alpha >= beta");
  if (!(sigma >= s.a && sigma <= s.b)) throw RangeError("sigma outside the PL strip [a, b]");
  const Bracket modulus = hypot(num(s.Q) + num(sigma), num(t));
  const Bracket w = (num(s.b) - num(sigma)) / (num(s.b) - num(s.a));
  const Bracket left = s.A * pow(modulus, num(s.alpha));
  const Bracket right = s.B * pow(modulus, num(s.beta));
  return pow(left, w) * pow(right, num(1) - w);
}

UpperReal pl_combine(const PLStrip& strip, double sigma, double t) {
  return pl_combine_enclosure(strip, sigma, t).upper_bound();
}

PowerFormBound pl_power_form(const VerticalLineBound& A, const VerticalLineBound& B) {
  if (!(A.sigma0 < B.sigma0)) throw InputError("pl_power_form needs sigma_A < sigma_B");
  const Rational d = B.sigma0 - A.sigma0;
  PowerFormBound f;
  f.v = (A.beta - B.beta) / d;
  f.u = A.beta + f.v * A.sigma0;
  f.y = (A.gamma - B.gamma) / d;
  f.x = A.gamma + f.y * A.sigma0;
  f.c = pow(B.C / A.C, Rational(1) / d);
  f.K = A.C * pow(f.c, -A.sigma0);
  f.sigma_a = A.sigma0;
  f.sigma_b = B.sigma0;
  f.line_a = A.label;
  f.line_b = B.label;
  return f;
}

Bracket evaluate_power_form(const PowerFormBound& f, const Modulus& q, double sigma, double t,
                            LineShape shape) {
  if (!(sigma >= to_double(f.sigma_a) && sigma <= to_double(f.sigma_b))) {
    throw RangeError("sigma outside the power form's interval");
  }
  const Bracket s = num(sigma);
  return f.K * pow(f.c, s) * shape_factor(shape, s, t) * pow(q.value, rat(f.u) - rat(f.v) * s) *
         pow(q.log(), rat(f.x) - rat(f.y) * s);
}

PLStrip strip_from_lines(const VerticalLineBound& A, const VerticalLineBound& B, const Modulus& q) {
  PLStrip s;
  s.a = to_double(A.sigma0);
  s.b = to_double(B.sigma0);
  s.A = A.C * pow(q.value, A.beta) * pow(q.log(), A.gamma);
  s.B = B.C * pow(q.value, B.beta) * pow(q.log(), B.gamma);
  s.alpha = 1.0;
  s.beta = 1.0;
  s.Q = 0.0;
  return s;
}

nlohmann::json to_json(const PowerFormBound& f) {
  return {
      {"K", f.K.upper()},
      {"c", f.c.upper()},
      {"q_exp", {{"u", rational_text(f.u)}, {"v", rational_text(f.v)}}},
      {"log_exp", {{"x", rational_text(f.x)}, {"y", rational_text(f.y)}}},
      {"sigma_range", {rational_text(f.sigma_a), rational_text(f.sigma_b)}},
  };
}

namespace {

RegimeReport regime_report(std::string name, const VerticalLineBound& A, const VerticalLineBound& B,
                           std::string printed_K, std::string printed_c) {
  RegimeReport rep;
  rep.name = std::move(name);
  rep.derived = pl_power_form(A, B);
  rep.printed_K = std::move(printed_K);
  rep.printed_c = std::move(printed_c);
  rep.K_rounded = ceil_decimal(rep.derived.K.upper(), 3);
  rep.c_rounded = ceil_3sig(rep.derived.c.upper());
  rep.endpoint_sigma = 0.5;
  rep.endpoint_target = 0.918;
  const Bracket K = Bracket::from_decimal(rep.printed_K);
  const Bracket half = num(0.5);
  rep.printed_endpoint = (K * pow(Bracket::from_decimal(rep.printed_c), half)).mid();
  rep.derived_endpoint = (K * pow(rep.derived.c, half)).mid();
  const auto ok = [](double v) { return v >= 0.917 && v <= 0.920; };
  rep.printed_passes = ok(rep.printed_endpoint);
  rep.derived_passes = ok(rep.derived_endpoint);
  return rep;
}

}  // namespace

RegimeReport middle_regime_report() {
  return regime_report("sigma in [1/2, 9/10]", published_line(PublishedLine::halfline),
                       published_line(PublishedLine::r10), "1.105", "0.692");
}

RegimeReport third_regime_report() {
  return regime_report("sigma in [1/10, 1/2]", published_line(PublishedLine::sigma_tenth),
                       published_line(PublishedLine::halfline), "10.094", "0.083");
}

BoundCertificate theorem_main_bound(const Modulus& q, double sigma, double t, EvalPolicy policy) {
  if (!(sigma >= 0.1 && sigma <= 0.9)) {
    throw InputError("theorem_main_bound covers sigma in [1/10, 9/10]; use theorem_oneline_bound above");
  }
  std::string reason = domain_reason(q, t, policy, "theorem_main_bound");
  BoundCertificate cert = start(FormulaId::theorem_main, q, sigma, t);
  const VerticalLineBound half = published_line(PublishedLine::halfline);

  // Each published C stands in for a bracket that must not exceed it on the
  // whole boundary line at this q; the brackets are largest at |t| = 1.
  std::vector<std::pair<VerticalLineBound, Bracket>> used;
  used.emplace_back(half, halfline_constant(q, 1.0));

  Bracket value;
  if (sigma == 0.5) {
    cert.inputs.extra["regime"] = "half-line";
    value = evaluate_line(half, q, t);
    cert.add_constant("C", half.C.upper(), "published: half-line constant 0.918");
  } else if (sigma > 0.5) {
    const VerticalLineBound r10 = published_line(PublishedLine::r10);
    used.emplace_back(r10, online_constant(burgess_theorem_form(10), q, 1.0));
    const PowerFormBound form = pl_power_form(half, r10);
    cert.inputs.extra["regime"] = "middle";
    value = evaluate_power_form(form, q, sigma, t);
    add_form_constants(cert, form);
    cert.notes.push_back("printed (1.105)(0.692)^sigma; re-derived K, c used");
  } else {
    const VerticalLineBound tenth = published_line(PublishedLine::sigma_tenth);
    used.emplace_back(tenth, table2_constant(num(0.1), q, 1.0));
    const PowerFormBound form = pl_power_form(tenth, half);
    cert.inputs.extra["regime"] = "low";
    value = evaluate_power_form(form, q, sigma, t);
    add_form_constants(cert, form);
    cert.notes.push_back("printed (10.094)(0.083)^sigma fails the sigma = 1/2 endpoint; re-derived c used");
  }
  for (const auto& [line, bracket] : used) {
    const bool dominated = bracket.upper() <= line.C.lower();
    cert.notes.push_back(line.label + ": bracket at this q is " + format_up(bracket.upper(), 6) +
                         (dominated ? " <= " : " > ") + "published " + format_up(line.C.upper(), 6));
    if (!dominated) {
      reason += std::string(reason.empty() ? "" : "; ") + "published constant of " + line.label +
                " is below its bracket at this q";
    }
  }
  cert.notes.push_back("Rademacher shift Q = 0; (sigma + |t|) factor used for |sigma + it|");
  cert.value = value.upper_bound();
  cert.valid = reason.empty();
  cert.reason = reason;
  return cert;
}

UpperReal zeta_upper(double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("zeta_upper needs epsilon > 0");
  return (num(1) + num(1) / num(epsilon)).upper_bound();
}

std::pair<Rational, Rational> oneline_exponents(Rational sigma, Rational epsilon) {
  const Rational den = Rational(1, 10) + epsilon;
  return {(Rational(1) + epsilon - sigma) / den, (sigma - Rational(9, 10)) / den};
}

BoundCertificate theorem_oneline_bound(const Modulus& q, double sigma, double t, double epsilon,
                                       EvalPolicy policy) {
  if (!(epsilon > 0.0)) throw InputError("theorem_oneline_bound needs epsilon > 0");
  if (!(sigma >= 0.9 && sigma <= 1.0 + epsilon)) {
    throw InputError("theorem_oneline_bound needs 9/10 <= sigma <= 1 + epsilon");
  }
  const std::string reason = domain_reason(q, t, policy, "theorem_oneline_bound");
  BoundCertificate cert = start(FormulaId::theorem_oneline, q, sigma, t);
  cert.inputs.epsilon = epsilon;

  VerticalLineBound r10 = published_line(PublishedLine::r10);
  r10.shape = LineShape::modulus;
  const Bracket line = evaluate_line(r10, q, t);
  const Bracket zeta = num(1) + num(1) / num(epsilon);
  const Bracket den = Bracket::of(Rational(1, 10)) + num(epsilon);
  const Bracket e1 = (num(1) + num(epsilon) - num(sigma)) / den;
  const Bracket e2 = (num(sigma) - Bracket::of(Rational(9, 10))) / den;
  const Bracket value = pow(line, e1) * pow(zeta, e2);

  cert.add_constant("C", r10.C.upper(), "published: r = 10 line constant 0.792");
  cert.add_constant("zeta_upper", zeta.upper(), "derived: 1 + 1/epsilon");
  cert.add_constant("line_exponent", e1.upper(), "derived: (1 + epsilon - sigma)/(1/10 + epsilon)");
  cert.add_constant("zeta_exponent", e2.upper(), "derived: (sigma - 9/10)/(1/10 + epsilon)");
  cert.notes.push_back("r = 10 line taken with |9/10 + it| as printed");
  if (!r10.C.positive() || online_constant(burgess_theorem_form(10), q, 1.0).upper() > r10.C.lower()) {
    cert.notes.push_back("r = 10 bracket exceeds 0.792 at this q");
    cert.valid = false;
    cert.reason = "published r = 10 constant is below its bracket at this q";
  }
  cert.value = value.upper_bound();
  if (!reason.empty()) {
    cert.valid = false;
    cert.reason = cert.reason.empty() ? reason : reason + "; " + cert.reason;
  }
  return cert;
}

EpsilonChoice optimize_epsilon(const Modulus& q, double t, double sigma) {
  const double lo = std::max(1e-6, sigma - 1.0);
  const double hi = 10.0;
  if (!(lo < hi)) throw InputError("optimize_epsilon: sigma too large for epsilon <= 10");
  const EvalPolicy any{true};
  const auto f = [&](double log_eps) {
    return theorem_oneline_bound(q, sigma, t, std::exp(log_eps), any).upper();
  };

  constexpr int kCoarse = 41;
  const double a0 = std::log(lo);
  const double b0 = std::log(hi);
  std::array<double, kCoarse> xs{};
  int best = 0;
  double best_v = 0.0;
  for (int i = 0; i < kCoarse; ++i) {
    xs[i] = a0 + (b0 - a0) * i / (kCoarse - 1);
    if (i == kCoarse - 1) xs[i] = b0;
    const double v = f(xs[i]);
    if (i == 0 || v < best_v) {
      best = i;
      best_v = v;
    }
  }
  double a = xs[std::max(0, best - 1)];
  double b = xs[std::min(kCoarse - 1, best + 1)];

  // Golden section on log epsilon; relative width in epsilon is about b - a.
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - g * (b - a);
  double x2 = a + g * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (std::expm1(b - a) > 1e-6) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - g * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + g * (b - a);
      f2 = f(x2);
    }
  }
  double x = f1 <= f2 ? x1 : x2;
  double v = std::min(f1, f2);
  if (best_v < v) {
    x = xs[best];
    v = best_v;
  }
  const double eps = std::min(hi, std::max(lo, std::exp(x)));
  return {eps, theorem_oneline_bound(q, sigma, t, eps, any).value};
}

}  // namespace lbound
