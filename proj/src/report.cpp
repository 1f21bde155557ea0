#include "lbound/report.hpp"

#include "lbound/errors.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

namespace lbound {

namespace {

std::string rational_text(Rational r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << "/" << r.denominator();
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string certified(double v) { return std::isfinite(v) ? format_up(v, 12) : "inf"; }

nlohmann::json no_bound_json(const std::string& reason) {
  return {{"formula_id", nullptr}, {"value", nullptr}, {"valid", false}, {"reason", reason}};
}

std::string trim_reason(std::string s) {
  for (char& c : s) {
    if (c == '\n') c = ' ';
  }
  return s;
}

}  // namespace

std::string shortest(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_real(const std::string& text) {
  static const std::regex decimal(R"(^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$)");
  static const std::regex fraction(R"(^([+-]?\d+)/(\d+)$)");
  std::smatch m;
  if (std::regex_match(text, decimal)) return std::strtod(text.c_str(), nullptr);
  if (std::regex_match(text, m, fraction)) {
    const long long n = std::stoll(m[1].str());
    const long long d = std::stoll(m[2].str());
    if (d == 0) throw InputError("zero denominator in '" + text + "'");
    return to_double(Rational(n, d));
  }
  throw InputError("not a number: '" + text + "'");
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  const char sep = text.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
  std::vector<double> out;
  if (sep == ',') {
    for (const auto& p : parts) out.push_back(parse_real(p));
    return out;
  }
  if (parts.size() < 3 || parts.size() > 4 || (parts.size() == 4 && parts[3] != "log")) {
    throw InputError("grid must be a,b,c or lo:hi:n[:log], got '" + text + "'");
  }
  const double lo = parse_real(parts[0]);
  const double hi = parse_real(parts[1]);
  const double n = parse_real(parts[2]);
  if (!(n >= 1.0 && n == std::floor(n) && n <= 1e6)) throw InputError("grid count must be a positive integer");
  const bool log_scale = parts.size() == 4;
  if (log_scale && !(lo > 0.0 && hi > 0.0)) throw InputError("log grid needs positive bounds");
  const int count = static_cast<int>(n);
  for (int i = 0; i < count; ++i) {
    if (count == 1) {
      out.push_back(lo);
    } else if (i == count - 1) {
      out.push_back(hi);
    } else if (log_scale) {
      out.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
    } else {
      out.push_back(lo + (hi - lo) * i / (count - 1));
    }
  }
  return out;
}

std::string tables_csv() {
  std::ostringstream os;
  os << kTablesCsvHeader << "\n";
  auto emit = [&](const std::vector<TableRow>& rows) {
    for (const auto& r : rows) {
      os << r.table << "," << r.key << "," << r.paper_C << "," << r.derived_C.text << ","
         << (r.match ? "true" : "false") << "," << rational_text(r.beta) << "," << rational_text(r.gamma) << "\n";
    }
  };
  emit(table1());
  emit(table2());
  return os.str();
}

nlohmann::json tables_json() {
  using nlohmann::json;
  json rows = json::array();
  auto emit = [&](const std::vector<TableRow>& tr) {
    for (const auto& r : tr) {
      rows.push_back({{"table", r.table},
                      {"row_key", r.key},
                      {"paper_C", r.paper_C},
                      {"derived_C", r.derived_C.text},
                      {"match_within_0.001", r.match},
                      {"beta", rational_text(r.beta)},
                      {"gamma", rational_text(r.gamma)},
                      {"paper_beta", rational_text(r.paper_beta)},
                      {"paper_gamma", rational_text(r.paper_gamma)},
                      {"exponents_match", r.exponents_match},
                      {"grid_max_at_corner", r.grid_ok},
                      {"uniform_sup", r.uniform_sup},
                      {"advisory", r.advisory},
                      {"note", r.note}});
    }
  };
  emit(table1());
  emit(table2());

  json regimes = json::array();
  for (const RegimeReport& rep : {middle_regime_report(), third_regime_report()}) {
    regimes.push_back({{"regime", rep.name},
                       {"power_form", to_json(rep.derived)},
                       {"derived_K_rounded", rep.K_rounded.text},
                       {"derived_c_rounded", rep.c_rounded.text},
                       {"printed_K", rep.printed_K},
                       {"printed_c", rep.printed_c},
                       {"endpoint_sigma", rep.endpoint_sigma},
                       {"endpoint_target", rep.endpoint_target},
                       {"printed_K_times_printed_c_pow", rep.printed_endpoint},
                       {"printed_K_times_derived_c_pow", rep.derived_endpoint},
                       {"printed_c_passes", rep.printed_passes},
                       {"derived_c_passes", rep.derived_passes},
                       {"provenance",
                        {{"printed", "published: main bound constants"},
                         {"derived", "derived: from " + rep.derived.line_a + " and " + rep.derived.line_b}}}});
  }

  json exponents = json::array();
  for (int r = 3; r <= 10; ++r) {
    const OnLineExponentReport e = on_line_exponent_report(r);
    exponents.push_back({{"r", r},
                         {"printed_q_exponent", rational_text(e.printed)},
                         {"derived_q_exponent", rational_text(e.derived)},
                         {"table_beta", rational_text(e.table)},
                         {"derived_matches_table", e.derived == e.table},
                         {"printed_matches_table", e.printed == e.table}});
  }

  json choices = json::array();
  const Modulus q = Modulus::power_of_ten(10);
  for (int r = 3; r <= 10; ++r) {
    const double off_sigma = 0.3;
    for (MNRule rule : {MNRule::printed, MNRule::consistent}) {
      const ChoiceReport c = report_MN_choice(r, off_sigma, q, 1.0, rule);
      choices.push_back({{"r", r},
                         {"sigma", off_sigma},
                         {"rule", rule == MNRule::printed ? "printed" : "consistent"},
                         {"lemma_value", c.lemma_value},
                         {"off_line_display_value", c.off_display_value},
                         {"reproduces", c.reproduces}});
    }
    const ChoiceReport on = report_MN_choice(r, to_double(Rational(r - 1, r)), q, 1.0, MNRule::printed);
    choices.push_back({{"r", r},
                       {"sigma", rational_text(Rational(r - 1, r))},
                       {"rule", "printed"},
                       {"lemma_value", on.lemma_value},
                       {"on_line_display_value", on.on_display_value},
                       {"reproduces", on.reproduces}});
  }

  return {{"rows", rows}, {"theorem_constants", regimes}, {"on_line_exponent", exponents}, {"mn_choices", choices}};
}

std::string scan_csv(const ScanResult& result) {
  std::ostringstream os;
  os << kScanCsvHeader << "\n";
  for (const auto& r : result.rows) {
    os << r.q << "," << shortest(r.sigma) << "," << shortest(r.t) << ",";
    if (r.cert) {
      os << to_string(r.cert->formula) << "," << certified(r.cert->upper()) << ",up@12," << "true,\n";
    } else {
      os << "none,,," << "false," << csv_field(trim_reason(r.reason)) << "\n";
    }
  }
  return os.str();
}

std::string truth_csv(const std::vector<TruthRow>& rows) {
  std::ostringstream os;
  os << kTruthCsvHeader << "\n";
  for (const auto& r : rows) {
    os << r.q << "," << r.j << "," << shortest(r.sigma) << "," << shortest(r.t) << "," << format_up(r.l_abs_lower, 12)
       << "," << format_up(r.l_abs_upper, 12) << "," << r.formula_id << "," << certified(r.bound_value) << ","
       << shortest(r.ratio) << "," << (r.observational ? "observational" : "certified") << "\n";
  }
  return os.str();
}

namespace {

struct Emitter {
  std::ostream& out;
  std::string path;
  std::string command;
  std::string ext;

  // Writes text to --output (resolved against LBOUND_OUTPUT_DIR when relative),
  // to $LBOUND_OUTPUT_DIR/<command>.<ext> when only the variable is set, else stdout.
  void write(const std::string& text) const {
    namespace fs = std::filesystem;
    const char* dir = std::getenv(kOutputDirEnv);
    fs::path target;
    if (!path.empty()) {
      target = path;
      if (target.is_relative() && dir && *dir) target = fs::path(dir) / target;
    } else if (dir && *dir) {
      target = fs::path(dir) / (command + "." + ext);
    } else {
      out << text;
      return;
    }
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    std::ofstream f(target);
    if (!f) throw InputError("cannot write " + target.string());
    f << text;
  }
};

struct Options {
  std::string output;
  std::string format;

  std::string q, sigma = "0.5", t = "1", epsilon, formula, line_a, line_b, M, N;
  int r = 0;
  bool assume_prime = false;
  bool allow_observational = false;
  bool all = false;

  std::string sigma_grid, t_grid = "1", q_grid;
  std::string q_list;
  std::size_t characters = 0;
  std::string target_radius = "1e-6";
  int order = 3;
  std::string method = "iterated";

  std::string input;
};

int cmd_bound(const Options& o, const Emitter& emit, std::ostream& err) {
  Modulus q = prime_modulus(o.q, o.assume_prime);
  const double sigma = parse_real(o.sigma);
  const double t = parse_real(o.t);
  std::optional<double> epsilon;
  if (!o.epsilon.empty()) epsilon = parse_real(o.epsilon);

  if (!o.formula.empty()) {
    const FormulaId id = formula_from_string(o.formula);
    BoundInputs in;
    in.q = q.decimal;
    in.sigma = sigma;
    in.t = t;
    if (o.r) in.r = o.r;
    in.epsilon = epsilon;
    if (!o.M.empty()) in.M = parse_real(o.M);
    if (!o.N.empty()) in.N = parse_real(o.N);
    if (!o.line_a.empty()) in.extra["line_a"] = o.line_a;
    if (!o.line_b.empty()) in.extra["line_b"] = o.line_b;
    if (q.primality != PrimalityMethod::none) in.extra["primality"] = to_string(q.primality);
    try {
      const BoundCertificate cert = evaluate(id, in, EvalPolicy{o.allow_observational});
      emit.write(to_json(cert).dump(2) + "\n");
      if (!cert.valid) err << "not certified: " << cert.reason << "\n";
      return cert.valid && cert.certified ? kExitOk : kExitNoBound;
    } catch (const ResourceError&) {
      throw;
    } catch (const std::exception& e) {
      nlohmann::json j = no_bound_json(e.what());
      j["formula_id"] = o.formula;
      emit.write(j.dump(2) + "\n");
      err << "no certified bound: " << e.what() << "\n";
      return kExitNoBound;
    }
  }

  const BestBound b = best_bound({q, sigma, t, epsilon, o.allow_observational});
  nlohmann::json j = b.best ? to_json(*b.best) : no_bound_json(b.reason);
  if (o.all) {
    nlohmann::json all = {{"best", j}, {"candidates", nlohmann::json::array()}, {"comparators", nlohmann::json::array()}};
    for (const auto& c : b.candidates) all["candidates"].push_back(to_json(c));
    for (const auto& c : b.comparators) all["comparators"].push_back(to_json(c));
    j = all;
  }
  emit.write(j.dump(2) + "\n");
  if (!b.best) {
    err << b.reason << "\n";
    return kExitNoBound;
  }
  return kExitOk;
}

int cmd_tables(const Options& o, const Emitter& emit, std::ostream& err) {
  const auto t1 = table1();
  if (o.format == "json") {
    emit.write(tables_json().dump(2) + "\n");
  } else {
    emit.write(tables_csv());
  }
  bool ok = true;
  for (const auto& r : t1) {
    if (!r.match || !r.exponents_match) {
      ok = false;
      err << "table1 " << r.key << " does not reproduce: derived " << r.derived_C.text << " vs " << r.paper_C
          << (r.note.empty() ? "" : " (" + r.note + ")") << "\n";
    }
  }
  for (const auto& r : table2()) {
    if (!r.note.empty()) err << "table2 " << r.key << " (advisory): " << r.note << "\n";
  }
  const RegimeReport third = third_regime_report();
  err << "main bound, third regime: printed c " << third.printed_c << " gives K c^{1/2} = "
      << format_up(third.printed_endpoint, 6) << "; derived c " << third.c_rounded.text << " gives "
      << format_up(third.derived_endpoint, 6) << " (target 0.918)\n";
  return ok ? kExitOk : kExitTableMismatch;
}

std::vector<Modulus> parse_moduli(const std::string& list, bool assume_prime) {
  std::vector<Modulus> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(prime_modulus(item, assume_prime));
  if (out.empty()) throw InputError("empty modulus list");
  return out;
}

int cmd_scan(const Options& o, const Emitter& emit, std::ostream& err) {
  const auto sig = parse_grid(o.sigma_grid);
  const auto ts = parse_grid(o.t_grid);
  const auto qs = parse_moduli(o.q_grid, o.assume_prime);
  std::optional<double> epsilon;
  if (!o.epsilon.empty()) epsilon = parse_real(o.epsilon);
  const ScanResult res = scan(sig, ts, qs, epsilon);
  if (o.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : res.rows) rows.push_back(r.cert ? to_json(*r.cert) : no_bound_json(r.reason));
    emit.write(rows.dump(2) + "\n");
  } else {
    emit.write(scan_csv(res));
  }
  for (const auto& d : res.discontinuities) err << "jump > 5%: " << d << "\n";
  return kExitOk;
}

int cmd_compare(const Options& o, const Emitter& emit, std::ostream& err) {
  const Modulus q = prime_modulus(o.q, o.assume_prime);
  const double sigma = parse_real(o.sigma);
  const auto ts = parse_grid(o.t_grid);
  if (ts.size() > kScanBudget) throw ResourceError("compare grid exceeds 100000 points");
  std::ostringstream os;
  os << kCompareCsvHeader << "\n";
  for (double t : ts) {
    std::string theorem;
    double theorem_value = std::numeric_limits<double>::infinity();
    if (sigma >= 0.1 && sigma <= 0.9) {
      const BoundCertificate c = theorem_main_bound(q, sigma, t, EvalPolicy{true});
      theorem_value = c.upper();
      theorem = certified(theorem_value);
    }
    const BestBound b = best_bound({q, sigma, t, std::nullopt, false});
    const double hiary = comparison_bound(q, t, Comparator::hiary, sigma).value();
    const double conv = comparison_bound(q, t, Comparator::convexity, sigma).value();
    os << q.decimal << "," << shortest(sigma) << "," << shortest(t) << "," << theorem << ","
       << (b.best ? to_string(b.best->formula) : "none") << "," << (b.best ? certified(b.best->upper()) : "") << ","
       << certified(hiary) << "," << certified(conv) << "," << (hiary < theorem_value ? "true" : "false") << "\n";
  }
  emit.write(os.str());
  if (sigma >= 0.1 && sigma <= 0.9 && !ts.empty()) {
    const Crossover c = hiary_crossover_t(q, sigma, ts.front(), ts.back());
    if (!c.found) {
      err << "main bound stays below the Hiary comparator on this t range\n";
    } else if (c.at_lower_end) {
      err << "main bound already exceeds the Hiary comparator at |t| = " << shortest(c.at) << "\n";
    } else {
      err << "main bound exceeds the Hiary comparator from |t| = " << format_up(c.at, 6) << "\n";
    }
  }
  const Crossover cq = hiary_crossover_log10q(ts.empty() ? 1.0 : ts.front());
  if (cq.found) {
    err << "half-line bound drops below the Hiary comparator beyond log10 q = " << format_up(cq.at, 6) << "\n";
  }
  return kExitOk;
}

int cmd_empirical(const Options& o, const Emitter& emit, std::ostream& err) {
  std::vector<std::uint64_t> qs;
  std::stringstream ss(o.q_list.empty() ? o.q : o.q_list);
  for (std::string item; std::getline(ss, item, ',');) {
    const Modulus m = prime_modulus(item);
    qs.push_back(std::stoull(m.decimal));
  }
  if (qs.empty()) throw InputError("empirical needs --q");
  TruthOptions opt;
  opt.max_characters = o.characters;
  opt.target_radius = parse_real(o.target_radius);
  opt.lvalue.order = o.order;
  if (o.method == "endbound") {
    opt.lvalue.method = TailMethod::endbound_exact;
  } else if (o.method == "endbound-pv") {
    opt.lvalue.method = TailMethod::endbound_polya;
  } else if (o.method != "iterated") {
    throw InputError("unknown method '" + o.method + "'");
  }
  const double sigma = parse_real(o.sigma);
  const double t = parse_real(o.t);
  const auto rows = bound_vs_truth(qs, sigma, t, opt);
  emit.write(truth_csv(rows));
  for (const auto& s : summarize(rows)) {
    err << "q=" << s.q << " " << s.formula_id << ": " << s.count << " characters, ratio min " << format_up(s.min, 4)
        << " median " << format_up(s.median, 4) << " max " << format_up(s.max, 4) << ", violations "
        << s.violations << " (observational)\n";
  }
  return kExitOk;
}

int cmd_certify(const Options& o, const Emitter& emit, std::ostream& err) {
  nlohmann::json j;
  if (o.input.empty() || o.input == "-") {
    j = nlohmann::json::parse(std::cin);
  } else {
    std::ifstream f(o.input);
    if (!f) throw InputError("cannot read " + o.input);
    j = nlohmann::json::parse(f);
  }
  const BoundCertificate stored = certificate_from_json(j);
  const BoundCertificate again = replay(stored);
  const bool same = again.upper() == stored.upper() ||
                    (!std::isfinite(again.upper()) && !std::isfinite(stored.upper()));
  nlohmann::json res = {{"formula_id", to_string(stored.formula)},
                        {"stored_value", stored.upper()},
                        {"recomputed_value", again.upper()},
                        {"bit_identical", same},
                        {"valid", again.valid},
                        {"reason", again.reason}};
  emit.write(res.dump(2) + "\n");
  if (!same) err << "replay differs from the stored value\n";
  return same ? kExitOk : kExitNoBound;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Explicit upper bounds for Dirichlet L-functions of prime modulus", "lbound"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--output,-o", o.output, "write to this file instead of stdout");
  app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* bound = app.add_subcommand("bound", "best (or a named) certified bound at one point");
  bound->add_option("--q", o.q, "prime modulus")->required();
  bound->add_option("--sigma", o.sigma, "real part (decimal or p/q)");
  bound->add_option("--t", o.t, "imaginary part");
  bound->add_option("--r", o.r, "Burgess parameter for prop_on/prop_off/lemma_partsum");
  bound->add_option("--epsilon", o.epsilon, "epsilon for theorem_oneline");
  bound->add_option("--formula", o.formula, "evaluate this formula id only");
  bound->add_option("--line-a", o.line_a, "pl_pair lower line label");
  bound->add_option("--line-b", o.line_b, "pl_pair upper line label");
  bound->add_option("--M", o.M, "lemma_partsum M");
  bound->add_option("--N", o.N, "lemma_partsum N");
  bound->add_flag("--assume-prime", o.assume_prime, "accept q above the deterministic primality range");
  bound->add_flag("--allow-observational", o.allow_observational, "evaluate outside q >= 10^10, |t| >= 1");
  bound->add_flag("--all", o.all, "also print every candidate and comparator");

  auto* tables = app.add_subcommand("tables", "reproduce Tables 1 and 2");

  auto* scan_cmd = app.add_subcommand("scan", "best bound on a sigma x t x q grid");
  scan_cmd->add_option("--sigma-grid", o.sigma_grid, "a,b,c or lo:hi:n[:log]")->required();
  scan_cmd->add_option("--t-grid", o.t_grid, "a,b,c or lo:hi:n[:log]");
  scan_cmd->add_option("--q-grid", o.q_grid, "comma-separated primes")->required();
  scan_cmd->add_option("--epsilon", o.epsilon, "epsilon for sigma > 1");
  scan_cmd->add_flag("--assume-prime", o.assume_prime);

  auto* compare = app.add_subcommand("compare", "main bound against the comparators over t");
  compare->add_option("--q", o.q, "prime modulus")->required();
  compare->add_option("--sigma", o.sigma);
  compare->add_option("--t-grid", o.t_grid, "default 1:1000:13:log");
  compare->add_flag("--assume-prime", o.assume_prime);

  auto* empirical = app.add_subcommand("empirical", "bounds against enclosed L-values at small q");
  empirical->add_option("--q", o.q_list, "comma-separated primes <= 10^7")->required();
  empirical->add_option("--sigma", o.sigma);
  empirical->add_option("--t", o.t);
  empirical->add_option("--characters", o.characters, "evenly spaced sample size (0: all)");
  empirical->add_option("--target-radius", o.target_radius);
  empirical->add_option("--order", o.order, "summation-by-parts order");
  empirical->add_option("--method", o.method, "iterated, endbound or endbound-pv");

  auto* certify = app.add_subcommand("certify", "replay a certificate JSON");
  certify->add_option("input", o.input, "certificate file ('-' for stdin)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  if (compare->parsed() && o.t_grid == "1") o.t_grid = "1:1000:13:log";
  std::string command;
  for (auto* sub : app.get_subcommands()) command = sub->get_name();
  const bool json_default = command == "bound" || command == "certify";
  if (o.format.empty()) o.format = json_default ? "json" : "csv";
  const Emitter emit{out, o.output, command, o.format};

  try {
    if (bound->parsed()) return cmd_bound(o, emit, err);
    if (tables->parsed()) return cmd_tables(o, emit, err);
    if (scan_cmd->parsed()) return cmd_scan(o, emit, err);
    if (compare->parsed()) return cmd_compare(o, emit, err);
    if (empirical->parsed()) return cmd_empirical(o, emit, err);
    if (certify->parsed()) return cmd_certify(o, emit, err);
  } catch (const ResourceError& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const nlohmann::json::exception& e) {
    err << "bad certificate: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace lbound
