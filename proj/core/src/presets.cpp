#include "nuframe/presets.hpp"

#include <array>
#include <utility>

#include <json.hpp>

#include "nuframe/errors.hpp"
#include "nuframe/parser.hpp"

namespace nuframe {

namespace {

using json = nlohmann::json;

constexpr std::string_view kEx51 = R"({
  "N": 2,
  "r": 3,
  "psi0_hat": "sinc(g)*chi(0,1/8]",
  "filters": [
    "cos(g)*cos(2*g)*chi(0,1/32]",
    "cos(2*g)*sin(g)*chi(0,1/32]",
    "sin(2*g)*chi(0,1/32]",
    "1 - chi(0,1/32]"
  ],
  "theta": "1"
})";

constexpr std::string_view kEx52 = R"({
  "N": 2,
  "r": 3,
  "psi0_hat": "chi[0,1/8]",
  "filters": [
    "chi[0,1/32]",
    "1 - chi[0,1/32]"
  ],
  "theta": "1"
})";

constexpr std::array<std::pair<std::string_view, std::string_view>, 2> kPresets{{
    {"ex5.1", kEx51},
    {"ex5.2", kEx52},
}};

std::int64_t require_int(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) {
    throw Error(ErrorCode::InvalidArgument, std::string("setup field '") + key + "' must be an integer");
  }
  return doc[key].get<std::int64_t>();
}

std::string require_string(const json& v, const std::string& what) {
  if (!v.is_string()) throw Error(ErrorCode::InvalidArgument, what + " must be a string");
  return v.get<std::string>();
}

}  // namespace

GeneralSetup setup_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("setup is not valid JSON: ") + e.what(),
                e.byte > 0 ? e.byte - 1 : 0);
  }
  if (!doc.is_object()) throw Error(ErrorCode::InvalidArgument, "setup must be a JSON object");

  const TranslationSet ts = TranslationSet::create(require_int(doc, "N"), require_int(doc, "r"));
  const char* psi_key = doc.contains("psi0_hat") ? "psi0_hat" : "psi0";
  if (!doc.contains(psi_key)) throw Error(ErrorCode::InvalidArgument, "setup field 'psi0_hat' is missing");
  FreqExpr psi0 = parse_expr(require_string(doc[psi_key], psi_key));

  if (!doc.contains("filters") || !doc["filters"].is_array()) {
    throw Error(ErrorCode::InvalidArgument, "setup field 'filters' must be an array");
  }
  std::vector<FreqExpr> filters;
  for (std::size_t i = 0; i < doc["filters"].size(); ++i) {
    filters.push_back(parse_expr(require_string(doc["filters"][i], "filters[" + std::to_string(i) + "]")));
  }

  std::optional<FreqExpr> theta;
  if (doc.contains("theta") && !doc["theta"].is_null()) {
    theta = parse_expr(require_string(doc["theta"], "theta"));
  }
  return GeneralSetup(ts, std::move(psi0), std::move(filters), std::move(theta));
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [name, src] : kPresets) out.emplace_back(name);
  return out;
}

std::string_view preset_source(std::string_view name) {
  for (const auto& [key, src] : kPresets) {
    if (key == name) return src;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown preset '" + std::string(name) + "'");
}

GeneralSetup preset(std::string_view name) { return setup_from_json(preset_source(name)); }

}  // namespace nuframe
