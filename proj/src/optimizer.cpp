#include "lbound/optimizer.hpp"

#include "lbound/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace lbound {

namespace {

Bracket num(double v) { return Bracket::exact(v); }

PrimalityMethod primality_from_string(const std::string& s) {
  for (auto m : {PrimalityMethod::trial_division, PrimalityMethod::strong_pseudoprime,
                 PrimalityMethod::asserted}) {
    if (to_string(m) == s) return m;
  }
  return PrimalityMethod::none;
}

Modulus modulus_from_inputs(const BoundInputs& in) {
  Modulus q = Modulus::from_decimal(in.q);
  if (auto it = in.extra.find("primality"); it != in.extra.end()) q.primality = primality_from_string(it->second);
  return q;
}

// A non-integer modulus for crossover searches; never certified.
Modulus synthetic_modulus(double log10q) {
  Modulus q;
  q.decimal = "10^" + std::to_string(log10q);
  q.value = Bracket::exact(std::pow(10.0, log10q));
  return q;
}

bool eligible(const BoundCertificate& c) { return c.valid && c.certified && std::isfinite(c.upper()); }

// Lower value wins; ties go to the earlier formula id, then to the earlier candidate.
bool better(const BoundCertificate& a, const BoundCertificate& b) {
  if (a.upper() != b.upper()) return a.upper() < b.upper();
  return static_cast<int>(a.formula) < static_cast<int>(b.formula);
}

template <typename F>
void try_add(std::vector<BoundCertificate>& out, std::vector<std::string>& skipped, const char* what, F&& f) {
  try {
    out.push_back(f());
  } catch (const std::exception& e) {
    skipped.push_back(std::string(what) + ": " + e.what());
  }
}

}  // namespace

Modulus prime_modulus(const std::string& decimal, bool assume_prime) {
  Modulus q = Modulus::from_decimal(decimal);
  const PrimalityVerdict v = check_prime(q.decimal);
  if (v.method == PrimalityMethod::none) {
    if (!assume_prime) {
      throw InputError("primality of " + q.decimal + " is beyond the deterministic test; pass --assume-prime");
    }
    q.primality = PrimalityMethod::asserted;
    return q;
  }
  if (!v.prime) throw InputError("modulus " + q.decimal + " is not prime");
  q.primality = v.method;
  return q;
}

std::vector<std::string> available_line_labels() {
  std::vector<std::string> labels;
  for (int r = 10; r >= 3; --r) labels.push_back(line_label(LineFamily::table2, r));
  for (int r = 2; r <= 10; ++r) labels.push_back(line_label(LineFamily::table1, r));
  return labels;
}

VerticalLineBound line_from_label(const std::string& label, const Modulus& q) {
  int r = 0;
  if (std::sscanf(label.c_str(), "table1:r=%d", &r) == 1 && label == line_label(LineFamily::table1, r)) {
    return vertical_line_at(LineFamily::table1, r, q);
  }
  if (std::sscanf(label.c_str(), "table2:sigma=1/%d", &r) == 1 && label == line_label(LineFamily::table2, r)) {
    return vertical_line_at(LineFamily::table2, r, q);
  }
  throw InputError("unknown line label '" + label + "'");
}

BoundCertificate pl_pair_bound(const Modulus& q, double sigma, double t, const std::string& line_a,
                               const std::string& line_b, EvalPolicy policy) {
  const std::string reason = domain_reason(q, t, policy, "pl_pair_bound");
  const VerticalLineBound A = line_from_label(line_a, q);
  const VerticalLineBound B = line_from_label(line_b, q);
  const PowerFormBound form = pl_power_form(A, B);
  BoundCertificate cert;
  cert.formula = FormulaId::pl_pair;
  cert.inputs.q = q.decimal;
  cert.inputs.sigma = sigma;
  cert.inputs.t = t;
  cert.inputs.extra["line_a"] = line_a;
  cert.inputs.extra["line_b"] = line_b;
  if (q.primality != PrimalityMethod::none) cert.inputs.extra["primality"] = to_string(q.primality);
  const Bracket value = evaluate_power_form(form, q, sigma, t);
  cert.add_constant("C_A", A.C.upper(), "derived: " + line_a + " bracket at (q, |t| = 1)");
  cert.add_constant("C_B", B.C.upper(), "derived: " + line_b + " bracket at (q, |t| = 1)");
  cert.add_constant("K", form.K.upper(), "derived: C_A c^{-sigma_A}");
  cert.add_constant("c", form.c.upper(), "derived: (C_B/C_A)^{1/(sigma_B - sigma_A)}");
  cert.notes.push_back("Rademacher shift Q = 0; (sigma + |t|) factor used for |sigma + it|");
  cert.value = value.upper_bound();
  cert.valid = reason.empty();
  cert.reason = reason;
  return cert;
}

BoundCertificate lemma_partsum_certificate(const BurgessData& data, const Modulus& q, double sigma, double t,
                                           double M, double N, EvalPolicy policy) {
  const std::string reason = domain_reason(q, t, policy, "lemma_partsum");
  const Bracket Mb = num(M);
  const Bracket Nb = num(N);
  if (data.r == 2 && data.log_exponent == Rational(1, 4)) burgess_rhs_enclosure(data, q, Nb);
  const Bracket value = lemma_partsum_enclosure(q, num(sigma), t, Mb, Nb, burgess_prefix_bound(data, q),
                                                pv_constant_enclosure());
  BoundCertificate cert;
  cert.formula = FormulaId::lemma_partsum;
  cert.inputs.q = q.decimal;
  cert.inputs.sigma = sigma;
  cert.inputs.t = t;
  cert.inputs.r = data.r;
  cert.inputs.M = M;
  cert.inputs.N = N;
  cert.inputs.extra["burgess"] = data.log_exponent == Rational(1, 2) && data.r == 2 ? "bb2" : "theorem";
  if (q.primality != PrimalityMethod::none) cert.inputs.extra["primality"] = to_string(q.primality);
  cert.add_constant("B", data.B.upper(), data.provenance);
  cert.add_constant("P", pv_constant_enclosure().upper(), "derived: 2/pi^2 + 1/log(10^10)");
  cert.value = value.upper_bound();
  cert.valid = reason.empty();
  cert.reason = reason;
  return cert;
}

BestBound best_bound(const BoundQuery& query) {
  const Modulus& q = query.q;
  const double s = query.sigma;
  const double t = query.t;
  const EvalPolicy policy{query.allow_observational};
  BestBound out;
  std::vector<std::string> skipped;

  if (std::fabs(t) < 1.0 && !query.allow_observational) {
    out.reason = "no certified bound: every formula needs |t| >= 1";
    return out;
  }
  if (!(s > 0.0)) {
    out.reason = "no certified bound: sigma must be positive";
    return out;
  }

  if (s == 0.5) try_add(out.candidates, skipped, "halfline_r2", [&] { return halfline_r2_bound(q, t, policy); });
  for (int r = 3; r <= 10; ++r) {
    if (is_on_line(r, s)) {
      try_add(out.candidates, skipped, "prop_on", [&] { return prop_on_bound(burgess_theorem_form(r), q, t, policy); });
    }
  }
  if (s < 1.0) {
    if (s < 0.5) {
      try_add(out.candidates, skipped, "prop_off", [&] { return prop_off_bound(burgess_bb2(), s, q, t, policy); });
    }
    for (int r = 3; r <= 10; ++r) {
      if (!is_on_line(r, s)) {
        try_add(out.candidates, skipped, "prop_off",
                [&] { return prop_off_bound(burgess_theorem_form(r), s, q, t, policy); });
      }
    }
  }

  const auto labels = available_line_labels();
  std::vector<double> sigmas;
  for (const auto& label : labels) sigmas.push_back(to_double(line_from_label(label, q).sigma0));
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (sigmas[i] <= s && s <= sigmas[j]) {
        try_add(out.candidates, skipped, "pl_pair",
                [&] { return pl_pair_bound(q, s, t, labels[i], labels[j], policy); });
      }
    }
  }

  if (s >= 0.1 && s <= 0.9) {
    try_add(out.candidates, skipped, "theorem_main", [&] { return theorem_main_bound(q, s, t, policy); });
  }
  if (s >= 0.9) {
    if (query.epsilon && s - 1.0 <= *query.epsilon) {
      try_add(out.candidates, skipped, "theorem_oneline",
              [&] { return theorem_oneline_bound(q, s, t, *query.epsilon, policy); });
    } else if (!query.epsilon && s <= 1.0) {
      try_add(out.candidates, skipped, "theorem_oneline", [&] {
        const EpsilonChoice e = optimize_epsilon(q, t, s);
        BoundCertificate c = theorem_oneline_bound(q, s, t, e.epsilon, policy);
        c.notes.push_back("epsilon chosen by golden-section search");
        return c;
      });
    }
  }

  for (Comparator kind : {Comparator::hiary, Comparator::convexity}) {
    try_add(out.comparators, skipped, "comparator", [&] { return comparison_certificate(q, s, t, kind); });
  }

  for (const auto& c : out.candidates) {
    if (eligible(c) && (!out.best || better(c, *out.best))) out.best = c;
  }
  if (!out.best) {
    if (out.candidates.empty()) {
      out.reason = "no certified bound: no formula applies at sigma = " + format_up(s, 6);
      if (s > 1.0) out.reason += " (sigma > 1 needs an epsilon >= sigma - 1)";
    } else {
      out.reason = "no certified bound: " + out.candidates.front().reason;
    }
  }
  return out;
}

DirectVsInterpolated direct_vs_interpolated(const Modulus& q, int r, double t) {
  DirectVsInterpolated d;
  const double s = to_double(Rational(1) - Rational(1, r));
  d.direct = prop_on_bound(burgess_theorem_form(r), q, t);
  d.interpolated = theorem_main_bound(q, s, t);
  d.winner = better(d.direct, d.interpolated) ? "direct" : "interpolated";
  return d;
}

ScanResult scan(const std::vector<double>& sigma_grid, const std::vector<double>& t_grid,
                const std::vector<Modulus>& q_grid, std::optional<double> epsilon) {
  const double points = static_cast<double>(sigma_grid.size()) * static_cast<double>(t_grid.size()) *
                        static_cast<double>(q_grid.size());
  if (points > static_cast<double>(kScanBudget)) {
    throw ResourceError("scan grid has " + std::to_string(static_cast<long long>(points)) +
                        " points; budget is 100000");
  }
  ScanResult res;
  for (const Modulus& q : q_grid) {
    for (double t : t_grid) {
      const ScanRow* prev = nullptr;
      for (double s : sigma_grid) {
        BoundQuery query{q, s, t, epsilon, false};
        BestBound b = best_bound(query);
        res.rows.push_back({q.decimal, s, t, b.best, b.reason});
        const ScanRow& row = res.rows.back();
        if (prev && prev->cert && row.cert) {
          const double a = prev->cert->upper();
          const double c = row.cert->upper();
          if (std::fabs(a - c) > 0.05 * std::min(a, c)) {
            res.discontinuities.push_back("q=" + q.decimal + " t=" + format_up(t, 6) + ": sigma " +
                                          format_up(prev->sigma, 6) + " -> " + format_up(s, 6) + " changes " +
                                          to_string(prev->cert->formula) + " " + format_up(a, 6) + " to " +
                                          to_string(row.cert->formula) + " " + format_up(c, 6));
          }
        }
        prev = &res.rows.back();
      }
    }
  }
  return res;
}

BoundCertificate evaluate(FormulaId id, const BoundInputs& in, EvalPolicy policy) {
  const Modulus q = modulus_from_inputs(in);
  const auto need = [&](const auto& opt, const char* name) {
    if (!opt) throw InputError(std::string("certificate input '") + name + "' missing");
    return *opt;
  };
  const double t = need(in.t, "t");
  switch (id) {
    case FormulaId::halfline_r2: return halfline_r2_bound(q, t, policy);
    case FormulaId::prop_on: return prop_on_bound(burgess_theorem_form(need(in.r, "r")), q, t, policy);
    case FormulaId::prop_off: {
      const int r = need(in.r, "r");
      const bool bb2 = r == 2 && need(in.sigma, "sigma") < 0.5;
      return prop_off_bound(bb2 ? burgess_bb2() : burgess_theorem_form(r), need(in.sigma, "sigma"), q, t, policy);
    }
    case FormulaId::pl_pair: {
      const auto a = in.extra.find("line_a");
      const auto b = in.extra.find("line_b");
      if (a == in.extra.end() || b == in.extra.end()) throw InputError("pl_pair certificate needs line_a, line_b");
      return pl_pair_bound(q, need(in.sigma, "sigma"), t, a->second, b->second, policy);
    }
    case FormulaId::theorem_main: return theorem_main_bound(q, need(in.sigma, "sigma"), t, policy);
    case FormulaId::theorem_oneline:
      return theorem_oneline_bound(q, need(in.sigma, "sigma"), t, need(in.epsilon, "epsilon"), policy);
    case FormulaId::lemma_partsum: {
      const int r = need(in.r, "r");
      const auto it = in.extra.find("burgess");
      const bool bb2 = it != in.extra.end() && it->second == "bb2";
      return lemma_partsum_certificate(bb2 ? burgess_bb2() : burgess_theorem_form(r), q, need(in.sigma, "sigma"),
                                       t, need(in.M, "M"), need(in.N, "N"), policy);
    }
    case FormulaId::hiary:
    case FormulaId::convexity:
      return comparison_certificate(q, need(in.sigma, "sigma"), t,
                                    id == FormulaId::hiary ? Comparator::hiary : Comparator::convexity);
  }
  throw InputError("unknown formula");
}

BoundCertificate replay(const BoundCertificate& cert) {
  BoundCertificate again = evaluate(cert.formula, cert.inputs);
  // Replays keep the recorded choice of epsilon; the search note is not part of the formula.
  again.notes = cert.notes;
  return again;
}

namespace {

double theorem_value(const Modulus& q, double sigma, double t) {
  return theorem_main_bound(q, sigma, t, EvalPolicy{true}).upper();
}

template <typename F>
Crossover bisect(F&& excess, double lo, double hi, bool log_scale) {
  Crossover c;
  if (excess(lo) > 0.0) {
    c.found = true;
    c.at_lower_end = true;
    c.at = lo;
    return c;
  }
  if (!(excess(hi) > 0.0)) return c;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * std::fabs(hi); ++i) {
    const double mid = log_scale ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    (excess(mid) > 0.0 ? hi : lo) = mid;
  }
  c.found = true;
  c.at = hi;
  return c;
}

}  // namespace

Crossover hiary_crossover_t(const Modulus& q, double sigma, double t_lo, double t_hi) {
  const auto excess = [&](double t) {
    return theorem_value(q, sigma, t) - comparison_bound(q, t, Comparator::hiary).value();
  };
  Crossover c = bisect(excess, t_lo, t_hi, true);
  if (c.found) {
    c.theorem_value = theorem_value(q, sigma, c.at);
    c.hiary_value = comparison_bound(q, c.at, Comparator::hiary).value();
  }
  return c;
}

Crossover hiary_crossover_log10q(double t, double lo, double hi) {
  // The half-line bound grows like q^{3/16} (log q)^{3/2}, Hiary's like
  // q^{1/4} (log q)^{1/2}: the half-line bound loses for small q.
  const auto excess = [&](double k) {
    const Modulus q = synthetic_modulus(k);
    return comparison_bound(q, t, Comparator::hiary).value() - theorem_value(q, 0.5, t);
  };
  Crossover c = bisect(excess, lo, hi, false);
  if (c.found) {
    const Modulus q = synthetic_modulus(c.at);
    c.theorem_value = theorem_value(q, 0.5, t);
    c.hiary_value = comparison_bound(q, t, Comparator::hiary).value();
  }
  return c;
}

}  // namespace lbound
