#include "lbound/certificate.hpp"

#include "lbound/errors.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <utility>

namespace lbound {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<FormulaId, const char*>, 9> kFormulaNames{{
    {FormulaId::halfline_r2, "halfline_r2"},
    {FormulaId::prop_on, "prop_on"},
    {FormulaId::prop_off, "prop_off"},
    {FormulaId::pl_pair, "pl_pair"},
    {FormulaId::theorem_main, "theorem_main"},
    {FormulaId::theorem_oneline, "theorem_oneline"},
    {FormulaId::lemma_partsum, "lemma_partsum"},
    {FormulaId::hiary, "hiary"},
    {FormulaId::convexity, "convexity"},
}};

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
  if (v) {
    if constexpr (std::is_floating_point_v<T>) {
      j[key] = number_or_null(*v);
    } else {
      j[key] = *v;
    }
  } else {
    j[key] = nullptr;
  }
}

template <typename T>
std::optional<T> get_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

std::string to_string(FormulaId id) {
  for (const auto& [f, name] : kFormulaNames) {
    if (f == id) return name;
  }
  return "unknown";
}

FormulaId formula_from_string(std::string_view name) {
  for (const auto& [f, n] : kFormulaNames) {
    if (name == n) return f;
  }
  throw InputError("unknown formula id '" + std::string(name) + "'");
}

const NamedConstant* BoundCertificate::constant(std::string_view name) const {
  for (const auto& c : constants) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

void BoundCertificate::add_constant(std::string name, double v, std::string provenance) {
  constants.push_back({std::move(name), v, std::move(provenance)});
}

json to_json(const BoundCertificate& cert) {
  json inputs;
  inputs["q"] = cert.inputs.q;
  put_optional(inputs, "sigma", cert.inputs.sigma);
  put_optional(inputs, "t", cert.inputs.t);
  put_optional(inputs, "r", cert.inputs.r);
  put_optional(inputs, "M", cert.inputs.M);
  put_optional(inputs, "N", cert.inputs.N);
  put_optional(inputs, "epsilon", cert.inputs.epsilon);
  for (const auto& [k, v] : cert.inputs.extra) inputs[k] = v;

  json constants = json::array();
  for (const auto& c : cert.constants) {
    constants.push_back({{"name", c.name}, {"value", number_or_null(c.value)}, {"provenance", c.provenance}});
  }

  json j;
  j["formula_id"] = to_string(cert.formula);
  j["inputs"] = std::move(inputs);
  j["constants"] = std::move(constants);
  j["value"] = number_or_null(cert.value.value());
  j["value_display"] = display_value(cert);
  j["valid"] = cert.valid;
  j["reason"] = cert.reason;
  j["certified"] = cert.certified;
  j["notes"] = cert.notes;
  return j;
}

BoundCertificate certificate_from_json(const json& j) {
  static const std::array<const char*, 7> kKnownInputs{"q", "sigma", "t", "r", "M", "N", "epsilon"};
  BoundCertificate cert;
  cert.formula = formula_from_string(j.at("formula_id").get<std::string>());
  const json& in = j.at("inputs");
  cert.inputs.q = in.at("q").get<std::string>();
  cert.inputs.sigma = get_optional<double>(in, "sigma");
  cert.inputs.t = get_optional<double>(in, "t");
  cert.inputs.r = get_optional<int>(in, "r");
  cert.inputs.M = get_optional<double>(in, "M");
  cert.inputs.N = get_optional<double>(in, "N");
  cert.inputs.epsilon = get_optional<double>(in, "epsilon");
  for (const auto& [k, v] : in.items()) {
    bool known = false;
    for (const char* name : kKnownInputs) known = known || k == name;
    if (!known && v.is_string()) cert.inputs.extra[k] = v.get<std::string>();
  }
  for (const auto& c : j.at("constants")) {
    const double v = c.at("value").is_null() ? std::numeric_limits<double>::infinity()
                                             : c.at("value").get<double>();
    cert.constants.push_back({c.at("name").get<std::string>(), v, c.at("provenance").get<std::string>()});
  }
  const double v = j.at("value").is_null() ? std::numeric_limits<double>::infinity()
                                           : j.at("value").get<double>();
  cert.value = UpperReal::up(v);
  cert.valid = j.at("valid").get<bool>();
  cert.reason = j.value("reason", "");
  cert.certified = j.value("certified", true);
  if (j.contains("notes")) cert.notes = j.at("notes").get<std::vector<std::string>>();
  return cert;
}

std::string display_value(const BoundCertificate& cert) {
  if (!std::isfinite(cert.value.value())) return "none";
  return format_up(cert.value.value(), 12) + " (rounded up at 12 significant digits)";
}

}  // namespace lbound
