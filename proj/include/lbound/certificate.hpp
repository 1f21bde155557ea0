// Replayable record of one bound evaluation.
#pragma once

#include "lbound/roundmath.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lbound {

/// Declaration order is the optimizer's tie-break order.
enum class FormulaId {
  halfline_r2,
  prop_on,
  prop_off,
  pl_pair,
  theorem_main,
  theorem_oneline,
  lemma_partsum,
  hiary,
  convexity,
};

std::string to_string(FormulaId id);
FormulaId formula_from_string(std::string_view name);

struct BoundInputs {
  std::string q;
  std::optional<double> sigma;
  std::optional<double> t;
  std::optional<int> r;
  std::optional<double> M;
  std::optional<double> N;
  std::optional<double> epsilon;
  /// Formula-specific selectors (line labels for PL pairs, primality method).
  std::map<std::string, std::string> extra;
};

struct NamedConstant {
  std::string name;
  double value = 0.0;
  std::string provenance;
};

struct BoundCertificate {
  FormulaId formula = FormulaId::halfline_r2;
  BoundInputs inputs;
  std::vector<NamedConstant> constants;
  UpperReal value;
  bool valid = true;
  std::string reason;
  std::vector<std::string> notes;
  /// False for shape-only comparators that carry no explicit guarantee.
  bool certified = true;

  double upper() const { return value.value(); }
  const NamedConstant* constant(std::string_view name) const;
  void add_constant(std::string name, double value, std::string provenance);
};

nlohmann::json to_json(const BoundCertificate& cert);
BoundCertificate certificate_from_json(const nlohmann::json& j);

/// Value printed to 12 significant digits, rounded toward +infinity.
std::string display_value(const BoundCertificate& cert);

}  // namespace lbound
