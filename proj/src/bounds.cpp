#include "lbound/bounds.hpp"

#include "lbound/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace lbound {

namespace {

constexpr int kRMin = 2;
constexpr int kRMax = 10;

// Published Table 1 (r = 2..10) and Table 2 (sigma = 1/3..1/10) rows.
constexpr std::array<const char*, 9> kBurgessB{"1.5197", "2.4910", "2.1551", "1.9688", "1.8476",
                                               "1.7596", "1.6875", "1.6292", "1.5810"};
constexpr std::array<const char*, 9> kTable1C{"0.918", "1.036", "0.902", "0.842", "0.812",
                                              "0.798", "0.791", "0.789", "0.792"};
constexpr std::array<std::pair<int, int>, 9> kTable1Beta{
    {{3, 16}, {1, 9}, {5, 64}, {3, 50}, {7, 144}, {2, 49}, {9, 256}, {5, 162}, {11, 400}}};
constexpr std::array<std::pair<int, int>, 9> kTable1Gamma{
    {{3, 2}, {7, 6}, {9, 8}, {11, 10}, {13, 12}, {15, 14}, {17, 16}, {19, 18}, {21, 20}}};
constexpr std::array<const char*, 8> kTable2C{"8.934", "6.877", "6.222", "5.996",
                                              "5.953", "6.003", "6.109", "6.249"};
constexpr std::array<std::pair<int, int>, 8> kTable2Beta{
    {{7, 24}, {11, 32}, {3, 8}, {19, 48}, {23, 56}, {27, 64}, {31, 72}, {7, 16}}};
constexpr std::array<std::pair<int, int>, 8> kTable2Gamma{
    {{1, 1}, {5, 4}, {7, 5}, {3, 2}, {11, 7}, {13, 8}, {5, 3}, {17, 10}}};

void require_r(int r, int lo = kRMin) {
  if (r < lo || r > kRMax) {
    throw InputError("Burgess parameter r = " + std::to_string(r) + " outside [" +
                     std::to_string(lo) + ", 10]");
  }
}

Bracket num(double v) { return Bracket::exact(v); }
Bracket rat(Rational r) { return Bracket::of(r); }
Bracket rat(std::int64_t n, std::int64_t d) { return Bracket::of(Rational(n, d)); }

Bracket power(const Bracket& base, const Bracket& e) { return pow(base, e); }

Bracket abs_t_plus(const Bracket& sigma, double t) { return sigma + num(std::fabs(t)); }

// q^a (log q)^b
Bracket q_log_power(const Modulus& q, const Bracket& a, const Bracket& b) {
  return power(q.value, a) * power(q.log(), b);
}

Bracket q_log_power(const Modulus& q, Rational a, Rational b) {
  return pow(q.value, a) * pow(q.log(), b);
}

std::int64_t parse_milli(const char* text) {
  // "d.ddd" -> d*1000 + ddd, exactly.
  const std::string s(text);
  const auto dot = s.find('.');
  std::string frac = s.substr(dot + 1);
  while (frac.size() < 3) frac += '0';
  return std::stoll(s.substr(0, dot)) * 1000 + std::stoll(frac.substr(0, 3));
}

std::string rational_text(Rational r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << "/" << r.denominator();
  return os.str();
}

BoundCertificate base_certificate(FormulaId id, const Modulus& q, double sigma, double t) {
  BoundCertificate cert;
  cert.formula = id;
  cert.inputs.q = q.decimal;
  cert.inputs.sigma = sigma;
  cert.inputs.t = t;
  if (q.primality != PrimalityMethod::none) cert.inputs.extra["primality"] = to_string(q.primality);
  return cert;
}

void finish(BoundCertificate& cert, const Bracket& value, const std::string& reason) {
  cert.value = value.upper_bound();
  cert.valid = reason.empty();
  cert.reason = reason;
}

// Two-line off-case bound with the theorem-form estimate.
Bracket off_line_display(const BurgessData& data, const Bracket& sigma, const Modulus& q, double t) {
  const int r = data.r;
  const Bracket B = data.B;
  const Bracket P = pv_constant_enclosure();
  const Bracket st = abs_t_plus(sigma, t);
  const Bracket rr = num(r);
  const Bracket ratio = rr / (sigma * rr - rr + num(1));  // r/(sigma r - r + 1)
  const Bracket first_coef = num(1) / (num(1) - sigma) + B + B * st * ratio;
  const Bracket second_coef = P * st / sigma - B * st * ratio;
  const Bracket first_q = rat(r + 1, 4 * r) * (num(1) - sigma);
  const Bracket first_log = (num(1) - sigma) / num(2);
  const Bracket second_q = num(0.5) - sigma * rat(2 * r + 1, 4 * r);
  const Bracket second_log = num(1) - sigma * rat(2 * r - 1, 2 * r - 2);
  return first_coef * q_log_power(q, first_q, first_log) +
         second_coef * q_log_power(q, second_q, second_log);
}

// On-line bound with the exponent its proof produces, or the printed one.
Bracket on_line_display(const BurgessData& data, const Modulus& q, double t, bool printed_exponent) {
  const int r = data.r;
  const Rational s = Rational(1) - Rational(1, r);
  const Bracket sigma = rat(s);
  const Bracket L = q.log();
  const Bracket bracket = num(r) + data.B + pv_constant_enclosure() * abs_t_plus(sigma, t) / sigma +
                          abs_t_plus(sigma, t) * data.B *
                              (L / num(4) + log(L) / (num(2) * sigma));
  const Rational q_exp = printed_exponent ? Rational(1, 2) - s / 2 + s * s / 4 : Rational(r + 1, 4 * r * r);
  return bracket * q_log_power(q, q_exp, (Rational(1) - s) / 2);
}

// Table-2 form (r = 2 estimate with (log q)^{1/2}, sigma < 1/2).
Bracket table2_value(const Bracket& sigma, const Modulus& q, double t, const BurgessData& bb2) {
  const Bracket factor = abs_t_plus(sigma, t) *
                         q_log_power(q, (num(4) - num(5) * sigma) / num(8), num(2) - num(3) * sigma);
  return table2_constant(sigma, q, t, bb2) * factor;
}

}  // namespace

std::string domain_reason(const Modulus& q, double t, EvalPolicy policy, const char* what) {
  std::string reason;
  if (!q.at_least_qmin()) reason = "observational: q < 10^10";
  if (std::fabs(t) < 1.0) reason += std::string(reason.empty() ? "" : "; ") + "observational: |t| < 1";
  if (!reason.empty() && !policy.allow_observational) {
    throw ValidityError(std::string(what) + ": " + reason);
  }
  return reason;
}

// ---------------------------------------------------------------------------

Modulus Modulus::from_decimal(std::string text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    throw InputError("modulus must be a decimal integer: '" + text + "'");
  }
  text.erase(0, std::min(text.find_first_not_of('0'), text.size() - 1));
  Modulus q;
  q.value = Bracket::from_decimal(text);
  q.decimal = std::move(text);
  if (!(q.value.lower() >= 2.0)) throw InputError("modulus must be >= 2");
  return q;
}

Modulus Modulus::from_integer(std::uint64_t q) { return from_decimal(std::to_string(q)); }

Modulus Modulus::power_of_ten(int k) {
  if (k < 0) throw InputError("negative power of ten");
  Modulus q = from_decimal("1" + std::string(static_cast<std::size_t>(k), '0'));
  if (k <= 22) q.value = Bracket::exact(std::pow(10.0, k));  // 10^22 is the last exact one
  return q;
}

BurgessData burgess_theorem_form(int r) {
  require_r(r);
  BurgessData d;
  d.r = r;
  d.B_text = kBurgessB[static_cast<std::size_t>(r - kRMin)];
  d.B = Bracket::from_decimal(d.B_text);
  d.log_exponent = Rational(1, 2 * r);
  d.provenance = "published: Table 1 B(r)";
  return d;
}

BurgessData burgess_bb2() {
  BurgessData d;
  d.r = 2;
  d.B_text = "1.520";
  d.B = Bracket::from_decimal(d.B_text);
  d.log_exponent = Rational(1, 2);
  d.provenance = "published: B(2) for the (log q)^{1/2} estimate";
  return d;
}

BurgessData burgess_bb2_table() {
  BurgessData d = burgess_bb2();
  d.B_text = "1.5197";
  d.B = Bracket::from_decimal(d.B_text);
  d.provenance = "published: Table 1 B(2)";
  return d;
}

Bracket pv_constant_enclosure() {
  const Bracket p = pi();
  return num(2) / (p * p) + num(1) / log(num(1e10));
}

UpperReal pv_constant() { return pv_constant_enclosure().upper_bound(); }

bool burgess_certified(const Modulus& q) { return q.at_least_qmin(); }

Bracket burgess_rhs_enclosure(const BurgessData& data, const Modulus& q, const Bracket& n1) {
  require_r(data.r);
  if (!(n1.lower() >= 1.0)) throw InputError("Burgess estimate needs N1 >= 1");
  if (data.r == 2 && data.log_exponent == Rational(1, 4)) {
    const Bracket limit = num(2) * pow(q.value, Rational(5, 8));
    if (n1.upper() >= limit.lower()) {
      throw ValidityError("r = 2 estimate with (log q)^{1/4} needs N1 < 2 q^{5/8}");
    }
  }
  const int r = data.r;
  return data.B * pow(n1, Rational(1) - Rational(1, r)) *
         q_log_power(q, Rational(r + 1, 4 * r * r), data.log_exponent);
}

UpperReal burgess_rhs(const BurgessData& data, const Modulus& q, double n1) {
  return burgess_rhs_enclosure(data, q, num(n1)).upper_bound();
}

PowerLawSum burgess_prefix_bound(const BurgessData& data, const Modulus& q) {
  require_r(data.r);
  const int r = data.r;
  return {data.B * q_log_power(q, Rational(r + 1, 4 * r * r), data.log_exponent),
          Rational(1) - Rational(1, r)};
}

Bracket lemma_partsum_enclosure(const Modulus& q, const Bracket& sigma, double t, const Bracket& M,
                                const Bracket& N, const PowerLawSum& S, const Bracket& P) {
  if (!(sigma.lower() > 0.0)) throw InputError("partial summation bound needs sigma > 0");
  if (sigma.lower() <= 1.0 && sigma.upper() >= 1.0) {
    throw InputError("partial summation bound is unsupported at sigma = 1");
  }
  if (!(M.lower() > 0.0)) throw InputError("partial summation bound needs M > 0");
  if (M.lower() > N.upper()) throw InputError("partial summation bound needs M <= N");

  const Bracket L = q.log();
  const Bracket st = abs_t_plus(sigma, t);
  const Bracket one_minus = num(1) - sigma;

  const Bracket initial = power(M, one_minus) / abs(one_minus);
  const Bracket e = rat(S.exponent);
  const Bracket d = e - sigma;  // exponent of u in S(u) u^{-sigma}
  const Bracket boundary = S.coefficient * power(M, d);
  const Bracket tail = st * P * sqrt(q.value) * L * power(N, -sigma) / sigma;

  Bracket integral = num(0);
  if (M.lower() != N.lower() || M.upper() != N.upper()) {
    const Bracket log_ratio = log(N) - log(M);
    const double spread = std::max(std::fabs(d.lower()), std::fabs(d.upper())) *
                          std::max(std::fabs(log_ratio.lower()), std::fabs(log_ratio.upper()));
    if (spread < 1e-3) {
      // int_M^N u^{d-1} du lies between min and max of u^d on [M, N] times log(N/M).
      const Bracket end_m = power(M, d);
      const Bracket end_n = power(N, d);
      const Bracket hull = Bracket::between(std::min(end_m.lower(), end_n.lower()),
                                            std::max(end_m.upper(), end_n.upper()));
      integral = hull * log_ratio;
    } else {
      integral = (power(N, d) - power(M, d)) / d;
    }
  }
  return initial + boundary + tail + st * S.coefficient * integral;
}

UpperReal lemma_partsum_bound(const Modulus& q, double sigma, double t, const Bracket& M,
                              const Bracket& N, const PowerLawSum& charsum, const Bracket& P) {
  return lemma_partsum_enclosure(q, num(sigma), t, M, N, charsum, P).upper_bound();
}

// Within a few ulps of 1 - 1/r counts as on the line: the off-line display is singular there.
bool is_on_line(int r, double sigma) {
  return std::fabs(sigma - to_double(Rational(1) - Rational(1, r))) <= 1e-12;
}

ParameterChoice choose_MN(int r, double sigma, const Modulus& q, MNRule rule) {
  require_r(r);
  if (!(sigma > 0.0 && sigma < 1.0)) throw InputError("choose_MN needs sigma in (0, 1)");
  ParameterChoice c;
  c.on_line = is_on_line(r, sigma);
  if (c.on_line) {
    const Rational s = Rational(1) - Rational(1, r);
    c.M_q_exp = (Rational(2) - s) / 4;
    c.M_log_exp = Rational(1, 2);
    c.N_q_exp = (Rational(3) - s) / 4;
    c.N_log_exp = (s + 1) / (s * 2);
  } else {
    c.M_q_exp = rule == MNRule::printed ? Rational(r + 1, 2 * r * (r + 2)) : Rational(r + 1, 4 * r);
    c.M_log_exp = Rational(1, 2);
    c.N_q_exp = Rational(2 * r + 1, 4 * r);
    c.N_log_exp = Rational(2 * r - 1, 2 * r - 2);
  }
  c.M = q_log_power(q, c.M_q_exp, c.M_log_exp);
  c.N = q_log_power(q, c.N_q_exp, c.N_log_exp);
  return c;
}

ParameterChoice halfline_MN(const Modulus& q) {
  ParameterChoice c;
  c.on_line = true;
  c.M_q_exp = Rational(3, 8);
  c.M_log_exp = Rational(1);
  c.N_q_exp = Rational(5, 8);
  c.N_log_exp = Rational(3);
  c.M = q_log_power(q, c.M_q_exp, c.M_log_exp);
  c.N = q_log_power(q, c.N_q_exp, c.N_log_exp);
  return c;
}

ChoiceReport report_MN_choice(int r, double sigma, const Modulus& q, double t, MNRule rule) {
  const BurgessData data = burgess_theorem_form(r);
  const ParameterChoice c = choose_MN(r, sigma, q, rule);
  ChoiceReport rep;
  rep.r = r;
  rep.sigma = sigma;
  rep.rule = rule;
  const Bracket s = c.on_line ? rat(Rational(1) - Rational(1, r)) : num(sigma);
  rep.lemma_value = lemma_partsum_enclosure(q, s, t, c.M, c.N, burgess_prefix_bound(data, q),
                                            pv_constant_enclosure())
                        .mid();
  const auto close = [](double a, double b) { return std::fabs(a - b) <= 1e-9 * std::fabs(b); };
  if (c.on_line) {
    rep.off_display_value = std::nan("");
    rep.on_display_value = on_line_display(data, q, t, true).mid();
    const double derived = on_line_display(data, q, t, false).mid();
    if (close(rep.lemma_value, rep.on_display_value)) {
      rep.reproduces = "on-line display";
    } else if (close(rep.lemma_value, derived)) {
      rep.reproduces = "on-line display with q-exponent (r+1)/(4r^2)";
    } else {
      rep.reproduces = "neither";
    }
  } else {
    rep.on_display_value = std::nan("");
    rep.off_display_value = off_line_display(data, s, q, t).mid();
    rep.reproduces = close(rep.lemma_value, rep.off_display_value) ? "off-line display" : "neither";
  }
  return rep;
}

// ---------------------------------------------------------------------------

Bracket halfline_constant(const Modulus& q, double t, const BurgessData& bb2) {
  const Bracket L = q.log();
  const Bracket B = bb2.B;
  const Bracket P = pv_constant_enclosure();
  const Bracket sigma = num(0.5);
  return B * (num(0.25) + num(2) * log(L) / L) + (num(2) + B) / (abs_t_plus(sigma, t) * L) +
         num(2) * P / (L * L);
}

Bracket online_constant(const BurgessData& data, const Modulus& q, double t) {
  require_r(data.r, 3);
  if (data.log_exponent != Rational(1, 2 * data.r)) {
    throw InputError("on-line constant needs the (log q)^{1/(2r)} estimate");
  }
  const int r = data.r;
  const Bracket s = rat(Rational(1) - Rational(1, r));
  const Bracket L = q.log();
  const Bracket P = pv_constant_enclosure();
  return (num(r) + data.B) / (abs_t_plus(s, t) * L) + P / (s * L) +
         data.B * (num(0.25) + log(L) / (num(2) * s * L));
}

Bracket table2_constant(const Bracket& sigma, const Modulus& q, double t, const BurgessData& bb2) {
  if (!(sigma.upper() < 0.5 && sigma.lower() > 0.0)) {
    throw InputError("the log-adjusted r = 2 form needs 0 < sigma < 1/2");
  }
  const Bracket B = bb2.B;
  const Bracket P = pv_constant_enclosure();
  const Bracket two_s_minus_1 = num(2) * sigma - num(1);
  const Bracket first = (num(1) / (num(1) - sigma) + B) / abs_t_plus(sigma, t) + num(2) * B / two_s_minus_1;
  const Bracket decay = q_log_power(q, two_s_minus_1 / num(8), two_s_minus_1);
  return first * decay + (P / sigma - num(2) * B / two_s_minus_1);
}

Bracket shape_factor(LineShape shape, const Bracket& sigma, double t) {
  if (shape == LineShape::sigma_plus_abs_t) return abs_t_plus(sigma, t);
  return hypot(sigma, num(t));
}

Bracket evaluate_line(const VerticalLineBound& line, const Modulus& q, double t) {
  return line.C * shape_factor(line.shape, rat(line.sigma0), t) *
         q_log_power(q, line.beta, line.gamma);
}

Rational line_sigma(LineFamily family, int r) {
  if (family == LineFamily::table1) {
    require_r(r);
    return Rational(1) - Rational(1, r);
  }
  require_r(r, 3);
  return Rational(1, r);
}

Rational line_beta(LineFamily family, int r) {
  const Rational s = line_sigma(family, r);
  if (family == LineFamily::table1) return r == 2 ? Rational(3, 16) : Rational(r + 1, 4 * r * r);
  return (Rational(4) - s * 5) / 8;
}

Rational line_gamma(LineFamily family, int r) {
  const Rational s = line_sigma(family, r);
  if (family == LineFamily::table1) return r == 2 ? Rational(3, 2) : Rational(2 * r + 1, 2 * r);
  return Rational(2) - s * 3;
}

std::string line_label(LineFamily family, int r) {
  if (family == LineFamily::table1) return "table1:r=" + std::to_string(r);
  return "table2:sigma=1/" + std::to_string(r);
}

Bracket line_constant(LineFamily family, int r, const Modulus& q, double t, ConstantSet set) {
  if (family == LineFamily::table1) {
    require_r(r);
    if (r == 2) return halfline_constant(q, t, burgess_bb2());
    return online_constant(burgess_theorem_form(r), q, t);
  }
  require_r(r, 3);
  const BurgessData bb2 = set == ConstantSet::table_reproduction ? burgess_bb2_table() : burgess_bb2();
  return table2_constant(rat(Rational(1, r)), q, t, bb2);
}

VerticalLineBound vertical_line_at(LineFamily family, int r, const Modulus& q, ConstantSet set) {
  VerticalLineBound line;
  line.label = line_label(family, r);
  line.sigma0 = line_sigma(family, r);
  line.C = line_constant(family, r, q, 1.0, set);
  line.beta = line_beta(family, r);
  line.gamma = line_gamma(family, r);
  line.q_min = q.value.lower();
  line.q_max = q.value.upper();
  line.provenance = "derived at q = " + q.decimal + ", |t| = 1";
  return line;
}

GridCheck grid_check(LineFamily family, int r, ConstantSet set) {
  constexpr std::array<double, 3> kT{1.0, 10.0, 1000.0};
  GridCheck g;
  g.corner_value = line_constant(family, r, Modulus::power_of_ten(10), 1.0, set).upper();
  g.grid_max = g.corner_value;
  for (int k = 10; k <= 30; ++k) {
    const Modulus q = Modulus::power_of_ten(k);
    for (double t : kT) {
      const double v = line_constant(family, r, q, t, set).upper();
      if (v > g.grid_max) {
        g.grid_max = v;
        g.q_exponent_at_max = k;
        g.t_at_max = t;
      }
    }
  }
  g.max_at_corner = g.grid_max <= g.corner_value;
  return g;
}

DerivedLine derive_vertical_constant(LineFamily family, int r, ConstantSet set) {
  const Modulus qmin = Modulus::power_of_ten(10);
  DerivedLine d;
  d.line.label = line_label(family, r);
  d.line.sigma0 = line_sigma(family, r);
  d.line.C = line_constant(family, r, qmin, 1.0, set);
  d.line.beta = line_beta(family, r);
  d.line.gamma = line_gamma(family, r);
  d.line.provenance = "derived at q = 10^10, |t| = 1";
  d.C_rounded = ceil_decimal(d.line.C.upper(), 3);
  d.grid = grid_check(family, r, set);
  if (family == LineFamily::table1) {
    // Every term is decreasing in q (log log q / log q decreases once log q > e) and in |t|.
    d.uniform_sup = d.line.C;
  } else {
    // The q-dependent term decays to 0 from whichever side its coefficient lies on.
    const Bracket s = rat(Rational(1, r));
    const BurgessData bb2 = set == ConstantSet::table_reproduction ? burgess_bb2_table() : burgess_bb2();
    const Bracket limit = pv_constant_enclosure() / s - num(2) * bb2.B / (num(2) * s - num(1));
    d.uniform_sup = max(d.line.C, limit);
  }
  return d;
}

VerticalLineBound published_table_line(LineFamily family, int r) {
  VerticalLineBound line;
  line.label = "published:" + line_label(family, r);
  line.sigma0 = line_sigma(family, r);
  line.C = Bracket::from_decimal(published_C_text(family, r));
  if (family == LineFamily::table1) {
    const auto [bn, bd] = kTable1Beta[static_cast<std::size_t>(r - 2)];
    const auto [gn, gd] = kTable1Gamma[static_cast<std::size_t>(r - 2)];
    line.beta = Rational(bn, bd);
    line.gamma = Rational(gn, gd);
    line.provenance = "published: Table 1";
  } else {
    const auto [bn, bd] = kTable2Beta[static_cast<std::size_t>(r - 3)];
    const auto [gn, gd] = kTable2Gamma[static_cast<std::size_t>(r - 3)];
    line.beta = Rational(bn, bd);
    line.gamma = Rational(gn, gd);
    line.provenance = "published: Table 2";
  }
  return line;
}

std::string published_C_text(LineFamily family, int r) {
  if (family == LineFamily::table1) {
    require_r(r);
    return kTable1C[static_cast<std::size_t>(r - 2)];
  }
  require_r(r, 3);
  return kTable2C[static_cast<std::size_t>(r - 3)];
}

VerticalLineBound published_line(PublishedLine which) {
  switch (which) {
    case PublishedLine::halfline: return published_table_line(LineFamily::table1, 2);
    case PublishedLine::r10: return published_table_line(LineFamily::table1, 10);
    case PublishedLine::sigma_tenth: return published_table_line(LineFamily::table2, 10);
  }
  throw InputError("unknown published line");
}

std::vector<TableRow> table1() {
  std::vector<TableRow> rows;
  for (int r = 2; r <= 10; ++r) {
    const DerivedLine d = derive_vertical_constant(LineFamily::table1, r);
    const VerticalLineBound paper = published_table_line(LineFamily::table1, r);
    TableRow row;
    row.table = "table1";
    row.key = "r=" + std::to_string(r);
    row.paper_C = published_C_text(LineFamily::table1, r);
    row.derived_C = d.C_rounded;
    row.match = std::llabs(d.C_rounded.scaled - parse_milli(row.paper_C.c_str())) <= 1;
    row.beta = d.line.beta;
    row.gamma = d.line.gamma;
    row.paper_beta = paper.beta;
    row.paper_gamma = paper.gamma;
    row.exponents_match = row.beta == row.paper_beta && row.gamma == row.paper_gamma;
    row.grid_ok = d.grid.max_at_corner;
    row.uniform_sup = d.uniform_sup.upper();
    if (r == 2 && !row.match) {
      // The printed 0.918 matches the bracket with 2P/log q in place of 2P/(log q)^2.
      const Modulus q = Modulus::power_of_ten(10);
      const Bracket L = q.log();
      const Bracket alt = halfline_constant(q, 1.0) - num(2) * pv_constant_enclosure() / (L * L) +
                          num(2) * pv_constant_enclosure() / L;
      row.note = "displayed bracket gives " + row.derived_C.text + "; reading its last term as 2P/log q gives " +
                 ceil_decimal(alt.upper(), 3).text;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<TableRow> table2() {
  std::vector<TableRow> rows;
  for (int r = 3; r <= 10; ++r) {
    const DerivedLine d = derive_vertical_constant(LineFamily::table2, r);
    const VerticalLineBound paper = published_table_line(LineFamily::table2, r);
    TableRow row;
    row.table = "table2";
    row.key = "sigma=1/" + std::to_string(r);
    row.paper_C = published_C_text(LineFamily::table2, r);
    row.derived_C = d.C_rounded;
    row.match = std::llabs(d.C_rounded.scaled - parse_milli(row.paper_C.c_str())) <= 1;
    row.beta = d.line.beta;
    row.gamma = d.line.gamma;
    row.paper_beta = paper.beta;
    row.paper_gamma = paper.gamma;
    row.exponents_match = row.beta == row.paper_beta && row.gamma == row.paper_gamma;
    row.grid_ok = d.grid.max_at_corner;
    row.uniform_sup = d.uniform_sup.upper();
    row.advisory = true;
    if (!row.grid_ok) {
      row.note = "bracket increases with q (grid max at q=10^" + std::to_string(d.grid.q_exponent_at_max) +
                 "); printed C holds at q=10^10 only; sup over q>=10^10 is " +
                 ceil_decimal(row.uniform_sup, 3).text;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// ---------------------------------------------------------------------------

BoundCertificate halfline_r2_bound(const Modulus& q, double t, EvalPolicy policy) {
  const std::string reason = domain_reason(q, t, policy, "halfline_r2_bound");
  BoundCertificate cert = base_certificate(FormulaId::halfline_r2, q, 0.5, t);
  cert.inputs.r = 2;
  const BurgessData bb2 = burgess_bb2();
  const Bracket C = halfline_constant(q, t, bb2);
  const ParameterChoice mn = halfline_MN(q);
  cert.inputs.M = mn.M.upper();
  cert.inputs.N = mn.N.upper();
  const Bracket value = C * abs_t_plus(num(0.5), t) * q_log_power(q, Rational(3, 16), Rational(3, 2));
  cert.add_constant("B2", bb2.B.upper(), bb2.provenance);
  cert.add_constant("P", pv_constant_enclosure().upper(), "derived: 2/pi^2 + 1/log(10^10)");
  cert.add_constant("C", C.upper(), "derived: half-line bracket at (q, |t|)");
  cert.add_constant("beta", 3.0 / 16.0, "exact: 3/16");
  cert.add_constant("gamma", 1.5, "exact: 3/2");
  finish(cert, value, reason);
  return cert;
}

BoundCertificate prop_on_bound(const BurgessData& data, const Modulus& q, double t, EvalPolicy policy) {
  if (data.r == 2) throw CaseError("r = 2 on the line sigma = 1/2 must use halfline_r2_bound");
  require_r(data.r, 3);
  const std::string reason = domain_reason(q, t, policy, "prop_on_bound");
  const int r = data.r;
  const Rational s = Rational(1) - Rational(1, r);
  BoundCertificate cert = base_certificate(FormulaId::prop_on, q, to_double(s), t);
  cert.inputs.r = r;
  const ParameterChoice mn = choose_MN(r, to_double(s), q);
  cert.inputs.M = mn.M.upper();
  cert.inputs.N = mn.N.upper();
  const Bracket C = online_constant(data, q, t);
  const Rational beta = Rational(r + 1, 4 * r * r);
  const Rational gamma = Rational(2 * r + 1, 2 * r);
  const Bracket value = C * abs_t_plus(rat(s), t) * q_log_power(q, beta, gamma);
  cert.add_constant("B", data.B.upper(), data.provenance);
  cert.add_constant("P", pv_constant_enclosure().upper(), "derived: 2/pi^2 + 1/log(10^10)");
  cert.add_constant("C", C.upper(), "derived: on-line bracket at (q, |t|)");
  cert.add_constant("beta", to_double(beta), "exact: " + rational_text(beta));
  cert.add_constant("gamma", to_double(gamma), "exact: " + rational_text(gamma));
  const OnLineExponentReport rep = on_line_exponent_report(r);
  cert.notes.push_back("q-exponent from the (M, N) choice is " + rational_text(rep.derived) +
                       "; the printed 1/2 - s/2 + s^2/4 would give " + rational_text(rep.printed));
  finish(cert, value, reason);
  return cert;
}

BoundCertificate prop_off_bound(const BurgessData& data, double sigma, const Modulus& q, double t,
                                EvalPolicy policy) {
  require_r(data.r);
  if (!(sigma > 0.0 && sigma < 1.0)) throw InputError("prop_off_bound needs sigma in (0, 1)");
  if (is_on_line(data.r, sigma)) throw CaseError("sigma = 1 - 1/r: use prop_on_bound");
  const bool log_adjusted = data.r == 2 && data.log_exponent == Rational(1, 2);
  if (data.r == 2 && data.log_exponent == Rational(1, 4)) {
    throw ValidityError("r = 2 with (log q)^{1/4} needs N1 < 2 q^{5/8}, which the chosen N exceeds");
  }
  if (!log_adjusted && data.log_exponent != Rational(1, 2 * data.r)) {
    throw InputError("prop_off_bound: unsupported log exponent for this r");
  }
  if (log_adjusted && !(sigma < 0.5)) {
    throw InputError("the log-adjusted r = 2 form is stated for sigma < 1/2 only");
  }
  const std::string reason = domain_reason(q, t, policy, "prop_off_bound");
  BoundCertificate cert = base_certificate(FormulaId::prop_off, q, sigma, t);
  cert.inputs.r = data.r;
  const Bracket s = num(sigma);
  const Bracket st = abs_t_plus(s, t);
  Bracket value;
  Bracket beta;
  Bracket gamma;
  if (log_adjusted) {
    value = table2_value(s, q, t, data);
    beta = (num(4) - num(5) * s) / num(8);
    gamma = num(2) - num(3) * s;
    cert.notes.push_back("log-adjusted r = 2 form");
  } else {
    const int r = data.r;
    const ParameterChoice mn = choose_MN(r, sigma, q, MNRule::consistent);
    cert.inputs.M = mn.M.upper();
    cert.inputs.N = mn.N.upper();
    value = off_line_display(data, s, q, t);
    if (sigma > 1.0 - 1.0 / r) {
      beta = rat(r + 1, 4 * r) * (num(1) - s);
      gamma = (num(1) - s) / num(2);
    } else {
      beta = num(0.5) - s * rat(2 * r + 1, 4 * r);
      gamma = num(1) - s * rat(2 * r - 1, 2 * r - 2);
    }
  }
  const Bracket C = value / (st * power(q.value, beta) * power(q.log(), gamma));
  cert.add_constant("B", data.B.upper(), data.provenance);
  cert.add_constant("P", pv_constant_enclosure().upper(), "derived: 2/pi^2 + 1/log(10^10)");
  cert.add_constant("C", C.upper(), "derived: leading constant after factoring the dominant line");
  cert.add_constant("beta", beta.mid(), "derived: dominant q-exponent");
  cert.add_constant("gamma", gamma.mid(), "derived: dominant log-exponent");
  finish(cert, value, reason);
  return cert;
}

OnLineExponentReport on_line_exponent_report(int r) {
  require_r(r);
  const Rational s = Rational(1) - Rational(1, r);
  OnLineExponentReport rep;
  rep.r = r;
  rep.printed = Rational(1, 2) - s / 2 + s * s / 4;
  rep.derived = Rational(r + 1, 4 * r * r);
  const auto [bn, bd] = kTable1Beta[static_cast<std::size_t>(r - 2)];
  rep.table = Rational(bn, bd);
  return rep;
}

Comparator comparator_from_string(std::string_view name) {
  if (name == "hiary") return Comparator::hiary;
  if (name == "convexity") return Comparator::convexity;
  throw InputError("unknown comparator '" + std::string(name) + "'");
}

std::string to_string(Comparator kind) { return kind == Comparator::hiary ? "hiary" : "convexity"; }

UpperReal comparison_bound(const Modulus& q, double t, Comparator kind, double sigma) {
  if (!(q.value.lower() >= 3.0)) throw InputError("comparators need q >= 3");
  const Bracket tau = num(std::fabs(t)) + num(1);
  if (kind == Comparator::hiary) {
    return (num(4) * pow(q.value, Rational(1, 4)) * sqrt(tau * q.log())).upper_bound();
  }
  return power(q.value * tau, (num(1) - num(sigma)) / num(2)).upper_bound();
}

BoundCertificate comparison_certificate(const Modulus& q, double sigma, double t, Comparator kind) {
  BoundCertificate cert =
      base_certificate(kind == Comparator::hiary ? FormulaId::hiary : FormulaId::convexity, q, sigma, t);
  cert.certified = false;
  cert.value = comparison_bound(q, t, kind, sigma);
  if (kind == Comparator::hiary) {
    cert.valid = sigma == 0.5;
    if (!cert.valid) cert.reason = "comparator stated on sigma = 1/2 only";
    cert.notes.push_back("comparator: 4 q^{1/4} sqrt(tau log q), evaluated, not re-derived");
  } else {
    cert.notes.push_back("shape-only comparator (q tau)^{(1-sigma)/2} with constant 1; not a bound");
  }
  return cert;
}

}  // namespace lbound
