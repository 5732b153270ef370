#include "nuframe/report_io.hpp"

#include <cstdio>

#include <json.hpp>

namespace nuframe {

namespace {

using ojson = nlohmann::ordered_json;

const char* group_name(Check::Group g) {
  switch (g) {
    case Check::Group::Hypothesis:
      return "hypothesis";
    case Check::Group::Uep:
      return "uep";
    case Check::Group::Oep:
      return "oep";
  }
  return "?";
}

// JSON has no infinity; failed evaluations serialize as null.
ojson number(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

}  // namespace

std::string to_json(const FrameReport& r) {
  ojson doc;
  doc["route"] = to_string(r.route);
  doc["lattice"] = {{"N", r.N}, {"r", r.r}};
  doc["grid"] = {{"a", r.grid_a.str()}, {"b", r.grid_b.str()}, {"log2_n", r.grid_log2}};
  doc["j_range"] = {r.j_min, r.j_max};
  doc["M"] = r.M ? ojson(*r.M) : ojson(nullptr);
  doc["signal"] = {{"label", r.signal_label},
                   {"support", {r.support_a.str(), r.support_b.str()}}};
  ojson levels = ojson::array();
  for (const auto& lv : r.levels) {
    levels.push_back({{"ell", lv.ell}, {"j", lv.j}, {"level_sum", number(lv.value)}});
  }
  doc["levels"] = std::move(levels);
  doc["total"] = number(r.total);
  doc["norm_sq"] = number(r.signal_norm_sq);
  doc["ratio"] = number(r.ratio);
  doc["tails"] = {{"negative_frequency", number(r.negative_mass)},
                  {"j_truncation", number(r.j_tail)},
                  {"coset_truncation", number(r.coset_tail)}};
  doc["warnings"] = r.warnings;
  return doc.dump(2) + "\n";
}

std::string to_json(const ConditionReport& r) {
  ojson doc;
  doc["passed"] = r.passed();
  doc["grid"] = {{"a", r.interval.lo.str()}, {"b", r.interval.hi.str()}, {"log2_n", r.grid_log2}};
  doc["refinement_residual"] = number(r.refinement_residual);
  doc["support_leak"] = number(r.support_leak);
  doc["limit_deviation"] = number(r.limit_deviation);
  ojson sups = ojson::array();
  for (double s : r.filter_sup) sups.push_back(number(s));
  doc["filter_sup"] = std::move(sups);
  doc["uep_residual"] = r.uep_residual ? number(*r.uep_residual) : ojson(nullptr);
  doc["oep_residual"] = r.oep_residual ? number(*r.oep_residual) : ojson(nullptr);
  ojson checks = ojson::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"group", group_name(c.group)},
                      {"value", number(c.value)},
                      {"tolerance", number(c.tolerance)},
                      {"passed", c.passed}});
  }
  doc["checks"] = std::move(checks);
  return doc.dump(2) + "\n";
}

std::string to_table(const FrameReport& r) {
  std::string out = "ell,j,level_sum\n";
  char buf[96];
  for (const auto& lv : r.levels) {
    std::snprintf(buf, sizeof(buf), "%zu,%d,%.17g\n", lv.ell, lv.j, lv.value);
    out += buf;
  }
  return out;
}

}  // namespace nuframe
