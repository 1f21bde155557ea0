// Command-line front end and the CSV/JSON reports it emits.
#pragma once

#include "lbound/empirical.hpp"
#include "lbound/optimizer.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace lbound {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitNoBound = 2,
  kExitBudget = 3,
  kExitTableMismatch = 4,
};

/// Environment variable naming the directory for relative or omitted --output paths.
inline constexpr const char* kOutputDirEnv = "LBOUND_OUTPUT_DIR";

/// Runs one command; args exclude the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "0.5", "-3", "1e-3" or "2/3". InputError otherwise.
double parse_real(const std::string& text);
/// "a,b,c", "lo:hi:n" (linear) or "lo:hi:n:log".
std::vector<double> parse_grid(const std::string& text);

/// Shortest decimal that reads back to the same double.
std::string shortest(double x);

inline constexpr const char* kTablesCsvHeader = "table,row_key,paper_C,derived_C,match_within_0.001,beta,gamma";
inline constexpr const char* kScanCsvHeader = "q,sigma,t,formula_id,value,rounding,valid,reason";
inline constexpr const char* kCompareCsvHeader =
    "q,sigma,t,theorem_value,best_formula,best_value,hiary_value,convexity_value,hiary_below_theorem";

std::string tables_csv();
nlohmann::json tables_json();
std::string scan_csv(const ScanResult& result);
std::string truth_csv(const std::vector<TruthRow>& rows);

}  // namespace lbound
