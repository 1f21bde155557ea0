#include "lbound/empirical.hpp"

#include "lbound/errors.hpp"
#include "lbound/optimizer.hpp"
#include "lbound/roundmath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace lbound {

namespace {

constexpr double kU = std::numeric_limits<double>::epsilon();

Bracket num(double v) { return Bracket::exact(v); }

// Neumaier-compensated accumulation.
void accumulate(double& sum, double& comp, double x) {
  const double s = sum + x;
  comp += std::fabs(sum) >= std::fabs(x) ? (sum - s) + x : (x - s) + sum;
  sum = s;
}

std::complex<double> power_term(double n, double sigma, double t) {
  const double l = std::log(n);
  const double m = std::exp(-sigma * l);
  return {m * std::cos(t * l), -m * std::sin(t * l)};
}

// Zero-mean periodic iterated sums b_1..b_K of a character, with sup norms.
struct IteratedSums {
  std::vector<std::vector<std::complex<double>>> b;  // b[j-1][n mod q]
  std::vector<double> sup;                            // certified-ish sup |b_j|
  std::vector<std::complex<double>> prefix;           // S(n), n = 0..q-1
  double prefix_sup = 0.0;
};

IteratedSums iterated_sums(const DirichletCharacter& chi, int order) {
  const std::uint64_t q = chi.modulus();
  const double qd = static_cast<double>(q);
  IteratedSums out;
  out.prefix.assign(q, {0.0, 0.0});
  for (std::uint64_t n = 1; n < q; ++n) out.prefix[n] = out.prefix[n - 1] + chi(n);
  double m = 0.0;
  for (const auto& v : out.prefix) m = std::max(m, std::abs(v));
  out.prefix_sup = m + 4.0 * qd * kU * (1.0 + m);

  std::vector<std::complex<double>> prev(q);
  for (std::uint64_t n = 0; n < q; ++n) prev[n] = chi(n);  // b_0 = chi, zero mean over a period
  double running_sup = 0.0;
  for (int j = 1; j <= order; ++j) {
    std::vector<std::complex<double>> raw(q);
    std::complex<double> c{0.0, 0.0};
    std::complex<double> total{0.0, 0.0};
    for (std::uint64_t n = 1; n < q; ++n) {
      c += prev[n];
      raw[n] = c;
      total += c;
    }
    const std::complex<double> mean = total / qd;
    double h = 0.0;
    for (std::uint64_t n = 0; n < q; ++n) {
      raw[n] -= mean;
      h = std::max(h, std::abs(raw[n]));
    }
    running_sup += h;
    // Rounding in the cumulative sums perturbs each entry by at most about
    // j q u times the magnitudes summed so far.
    out.sup.push_back(h + 8.0 * j * (qd + 1.0) * qd * kU * (1.0 + running_sup));
    out.b.push_back(raw);
    prev = std::move(raw);
  }
  return out;
}

// Delta^k f(n) for f(x) = x^{-s}, by the binomial formula.
std::complex<double> forward_difference(int k, std::uint64_t n, double sigma, double t) {
  std::complex<double> acc{0.0, 0.0};
  double binom = 1.0;
  for (int i = 0; i <= k; ++i) {
    acc += (i % 2 == 0 ? 1.0 : -1.0) * binom * power_term(static_cast<double>(n + i), sigma, t);
    binom = binom * (k - i) / (i + 1);
  }
  return acc;
}

// |s (s+1) ... (s+K-1)| N^{1-sigma-K}/(sigma+K-1), rounded up.
double iterated_remainder(double sup, double sigma, double t, std::uint64_t n, int order) {
  Bracket poch = num(1);
  for (int j = 0; j < order; ++j) poch = poch * hypot(num(sigma) + num(j), num(t));
  const Bracket e = num(sigma) + num(order - 1);
  const Bracket r = num(sup) * poch * pow(num(static_cast<double>(n)), -e) / e;
  return r.upper();
}

struct Estimate {
  std::complex<double> center;
  double radius = 0.0;
};

Estimate estimate_at(const DirichletCharacter& chi, const DirichletSeriesCache& cache, const IteratedSums& it,
                     const LValueOptions& opt) {
  const std::uint64_t q = chi.modulus();
  const std::uint64_t N = cache.terms();
  const double sigma = cache.sigma();
  const double t = cache.t();
  double err = 0.0;
  Estimate e;
  e.center = cache.partial_sum(chi, &err);

  if (opt.method == TailMethod::iterated) {
    const int K = opt.order;
    const double fN = std::exp(-sigma * std::log(static_cast<double>(N + 1)));
    const double loss = 4.0 + 2.0 * (sigma + std::fabs(t)) * std::log(static_cast<double>(N + K + 1));
    for (int j = 1; j <= K; ++j) {
      const std::complex<double> bj = it.b[j - 1][N % q];
      e.center -= bj * forward_difference(j - 1, N + 1, sigma, t);
      err += 64.0 * kU * (it.sup[j - 1] + std::abs(bj)) * std::ldexp(1.0, j) * fN * loss;
    }
    e.radius = detail::add_up(iterated_remainder(it.sup[K - 1], sigma, t, N, K), err);
  } else {
    const double H = opt.method == TailMethod::endbound_exact ? it.prefix_sup : polya_vinogradov_prefix_bound(q);
    const double sN = std::abs(it.prefix[N % q]);
    e.radius = detail::add_up(endbound_radius(H, sigma, t, N, sN * (1.0 + 4.0 * kU * static_cast<double>(q))), err);
  }
  return e;
}

}  // namespace

double LValueEnclosure::abs_lower() const { return std::max(0.0, detail::sub_down(std::abs(center), radius)); }
double LValueEnclosure::abs_upper() const { return detail::add_up(detail::next_up(std::abs(center)), radius); }

DirichletSeriesCache::DirichletSeriesCache(std::uint64_t q, double sigma, double t)
    : q_(q), sigma_(sigma), t_(t), re_(q, 0.0), im_(q, 0.0), re_c_(q, 0.0), im_c_(q, 0.0) {
  if (!(sigma > 0.0)) throw InputError("Dirichlet series evaluation needs sigma > 0");
}

void DirichletSeriesCache::extend_to(std::uint64_t n) {
  for (std::uint64_t m = n_ + 1; m <= n; ++m) {
    const std::uint64_t a = m % q_;
    if (a == 0) continue;
    const std::complex<double> z = power_term(static_cast<double>(m), sigma_, t_);
    accumulate(re_[a], re_c_[a], z.real());
    accumulate(im_[a], im_c_[a], z.imag());
    abs_sum_ += std::abs(z);
  }
  if (n > n_) {
    n_ = n;
    max_log_ = std::log(static_cast<double>(n));
  }
}

std::complex<double> DirichletSeriesCache::partial_sum(const DirichletCharacter& chi, double* error) const {
  double sr = 0.0, sr_c = 0.0, si = 0.0, si_c = 0.0, mag = 0.0;
  for (std::uint64_t a = 1; a < q_; ++a) {
    const std::complex<double> z{re_[a] + re_c_[a], im_[a] + im_c_[a]};
    const std::complex<double> w = chi(a) * z;
    accumulate(sr, sr_c, w.real());
    accumulate(si, si_c, w.imag());
    mag += std::abs(z);
  }
  if (error) {
    const double per_term = 8.0 + 2.0 * (sigma_ + std::fabs(t_)) * max_log_;
    *error = kU * (per_term * abs_sum_ + (static_cast<double>(q_) + 8.0) * mag) * 1.01;
  }
  return {sr + sr_c, si + si_c};
}

double endbound_radius(double H, double sigma, double t, std::uint64_t n, double abs_prefix_n) {
  const Bracket Nms = pow(num(static_cast<double>(n)), -num(sigma));
  return (num(H) * (num(sigma) + num(std::fabs(t))) * Nms / num(sigma) + num(abs_prefix_n) * Nms).upper();
}

double polya_vinogradov_prefix_bound(std::uint64_t q) {
  const Bracket qb = num(static_cast<double>(q));
  return (pv_constant_enclosure() * sqrt(qb) * log(qb)).upper();
}

LValueEnclosure l_value(const DirichletCharacter& chi, DirichletSeriesCache& cache, double target_radius,
                        const LValueOptions& opt) {
  if (chi.principal()) throw InputError("l_value needs a non-principal character");
  if (cache.modulus() != chi.modulus()) throw InputError("series cache built for another modulus");
  if (opt.order < 1 || opt.order > 8) throw InputError("summation-by-parts order must be in [1, 8]");
  const std::uint64_t q = chi.modulus();
  const IteratedSums it = iterated_sums(chi, opt.method == TailMethod::iterated ? opt.order : 0);

  std::uint64_t N = opt.start_terms;
  if (N == 0) {
    N = 1;
    while (N < 2 * q) N *= 2;
  }
  N = std::max(N, cache.terms());
  if (N > opt.budget) throw ResourceError("starting truncation exceeds the term budget");

  LValueEnclosure out;
  for (;;) {
    cache.extend_to(N);
    const Estimate e = estimate_at(chi, cache, it, opt);
    // Past the rounding-error floor more terms only widen the enclosure;
    // keep the previous one.
    if (!out.history.empty() && e.radius >= out.radius) {
      out.stalled = true;
      break;
    }
    out.center = e.center;
    out.radius = e.radius;
    out.terms_used = N;
    out.history.emplace_back(N, e.radius);
    if (e.radius <= target_radius) break;
    if (2 * N > opt.budget) {
      out.budget_exhausted = true;
      break;
    }
    N *= 2;
  }
  return out;
}

LValueEnclosure l_value(const DirichletCharacter& chi, double sigma, double t, double target_radius,
                        const LValueOptions& opt) {
  DirichletSeriesCache cache(chi.modulus(), sigma, t);
  return l_value(chi, cache, target_radius, opt);
}

std::vector<std::uint64_t> sampled_exponents(std::uint64_t q, std::size_t max_characters) {
  std::vector<std::uint64_t> js;
  const std::uint64_t count = q - 2;  // non-principal characters
  if (max_characters == 0 || max_characters >= count) {
    for (std::uint64_t j = 1; j <= count; ++j) js.push_back(j);
    return js;
  }
  for (std::size_t k = 0; k < max_characters; ++k) js.push_back(1 + k * count / max_characters);
  return js;
}

std::vector<TruthRow> bound_vs_truth(const std::vector<std::uint64_t>& q_list, double sigma, double t,
                                     const TruthOptions& options) {
  std::vector<TruthRow> rows;
  for (std::uint64_t q : q_list) {
    auto group = CharacterGroup::build(q);
    const Modulus mq = prime_modulus(std::to_string(q));

    // Bounds depend on (q, sigma, t) only; keep each formula's smallest value.
    BoundQuery query{mq, sigma, t, std::nullopt, true};
    const BestBound all = best_bound(query);
    std::map<FormulaId, const BoundCertificate*> smallest;
    for (const auto& c : all.candidates) {
      auto [pos, fresh] = smallest.emplace(c.formula, &c);
      if (!fresh && c.upper() < pos->second->upper()) pos->second = &c;
    }

    DirichletSeriesCache cache(q, sigma, t);
    for (std::uint64_t j : sampled_exponents(q, options.max_characters)) {
      const DirichletCharacter chi(group, j);
      const LValueEnclosure e = l_value(chi, cache, options.target_radius, options.lvalue);
      for (const auto& [id, cert] : smallest) {
        TruthRow row;
        row.q = q;
        row.j = j;
        row.sigma = sigma;
        row.t = t;
        row.l_abs_lower = e.abs_lower();
        row.l_abs_upper = e.abs_upper();
        row.formula_id = to_string(id);
        row.bound_value = cert->upper();
        row.ratio = row.bound_value / row.l_abs_upper;
        row.observational = !cert->valid;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::vector<RatioSummary> summarize(const std::vector<TruthRow>& rows) {
  std::map<std::pair<std::uint64_t, std::string>, std::vector<const TruthRow*>> groups;
  std::vector<std::pair<std::uint64_t, std::string>> order;
  for (const auto& r : rows) {
    auto key = std::make_pair(r.q, r.formula_id);
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(&r);
  }
  std::vector<RatioSummary> out;
  for (const auto& key : order) {
    const auto& g = groups[key];
    std::vector<double> ratios;
    RatioSummary s;
    s.q = key.first;
    s.formula_id = key.second;
    s.count = g.size();
    for (const TruthRow* r : g) {
      ratios.push_back(r->ratio);
      if (r->bound_value < r->l_abs_lower) ++s.violations;
    }
    std::sort(ratios.begin(), ratios.end());
    s.min = ratios.front();
    s.max = ratios.back();
    const std::size_t m = ratios.size() / 2;
    s.median = ratios.size() % 2 ? ratios[m] : 0.5 * (ratios[m - 1] + ratios[m]);
    out.push_back(s);
  }
  return out;
}

}  // namespace lbound
