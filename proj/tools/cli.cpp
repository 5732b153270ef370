#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nuframe/analysis.hpp"
#include "nuframe/errors.hpp"
#include "nuframe/parser.hpp"
#include "nuframe/presets.hpp"
#include "nuframe/report_io.hpp"
#include "nuframe/setup.hpp"
#include "nuframe/signals.hpp"

namespace nuframe::cli {

namespace {

using ojson = nlohmann::ordered_json;

constexpr double kParsevalTol = 1e-6;
constexpr double kDirectTol = 1e-2;
constexpr double kTelescopeTol = 1e-8;
constexpr int kDefaultSamples = 17;

struct Config {
  std::string preset;
  std::string setup_path;
  std::string signal;
  std::string j_range;
  std::optional<int> j_min;
  std::optional<int> j_max;
  std::string route = "parseval";
  std::int64_t M = kDefaultCosetTruncation;
  int grid_log2 = kDefaultGridLog2;
  std::optional<double> tol;
  std::string out_path;
  std::string format = "report";
  std::string interval;
  std::string theta;
  bool corollary = false;
  int samples = kDefaultSamples;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read setup file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GeneralSetup load_setup(const Config& c) {
  if (c.preset.empty() == c.setup_path.empty()) {
    throw UsageError("exactly one of --preset or --setup is required");
  }
  return c.preset.empty() ? setup_from_json(read_file(c.setup_path)) : preset(c.preset);
}

SignalSpec load_signal(const Config& c) {
  if (c.signal.empty()) throw UsageError("--signal is required");
  return signal_from_designator(c.signal);
}

std::pair<int, int> resolve_j(const Config& c, int lo, int hi) {
  if (!c.j_range.empty()) {
    if (c.j_min || c.j_max) throw UsageError("--j cannot be combined with --jmin/--jmax");
    static const std::regex range(R"(^\s*(-?\d+)\s*(?:\.\.\s*(-?\d+))?\s*$)");
    std::smatch m;
    if (!std::regex_match(c.j_range, m, range)) {
      throw UsageError("--j expects 'a..b' or a single integer, got '" + c.j_range + "'");
    }
    lo = std::stoi(m[1].str());
    hi = m[2].matched ? std::stoi(m[2].str()) : lo;
  } else {
    lo = c.j_min.value_or(lo);
    hi = c.j_max.value_or(hi);
  }
  if (lo > hi) throw UsageError("empty j range " + std::to_string(lo) + ".." + std::to_string(hi));
  return {lo, hi};
}

Interval resolve_interval(const Config& c) {
  if (c.interval.empty()) return working_interval();
  const auto dots = c.interval.find("..");
  if (dots == std::string::npos) throw UsageError("--interval expects 'a..b'");
  Interval iv{Rational::parse(c.interval.substr(0, dots)), Rational::parse(c.interval.substr(dots + 2))};
  if (!(iv.lo < iv.hi)) throw UsageError("--interval needs a < b");
  return iv;
}

void emit(const Config& c, const std::string& text, std::ostream& out) {
  if (c.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(c.out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + c.out_path + "'");
  file << text;
}

std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int cmd_validate(const Config& c, std::ostream& out, std::ostream& err) {
  const GeneralSetup s = load_setup(c);
  ValidateOptions opt;
  opt.grid_log2 = c.grid_log2;
  opt.tol = c.tol.value_or(kDefaultTolerance);
  opt.interval = resolve_interval(c);
  const ConditionReport rep = validate_setup(s, opt);
  if (c.format == "table") {
    std::string text = "check,group,value,tolerance,passed\n";
    for (const auto& ch : rep.checks) {
      const char* group = ch.group == Check::Group::Hypothesis ? "hypothesis"
                          : ch.group == Check::Group::Uep     ? "uep"
                                                              : "oep";
      text += ch.name + "," + group + "," + csv_number(ch.value) + "," + csv_number(ch.tolerance) +
              "," + (ch.passed ? "1" : "0") + "\n";
    }
    emit(c, text, out);
  } else {
    emit(c, to_json(rep), out);
  }
  for (const auto& ch : rep.checks) {
    if (!ch.passed) err << "validate: " << ch.name << " = " << fmt(ch.value) << " exceeds " << fmt(ch.tolerance) << "\n";
  }
  err << "validate: " << (rep.passed() ? "PASS" : "FAIL") << "\n";
  return rep.passed() ? kExitOk : kExitCheckFailed;
}

int cmd_parseval(const Config& c, std::ostream& out, std::ostream& err) {
  const GeneralSetup s = load_setup(c);
  const SignalSpec f = load_signal(c);
  ReportOptions opt;
  std::tie(opt.j_min, opt.j_max) = resolve_j(c, opt.j_min, opt.j_max);
  if (c.route == "direct") {
    opt.route = Route::DirectOracle;
  } else if (c.route != "parseval") {
    throw UsageError("--route must be 'parseval' or 'direct'");
  }
  opt.M = c.M;
  opt.grid_log2 = c.grid_log2;
  const double tol = c.tol.value_or(opt.route == Route::DirectOracle ? kDirectTol : kParsevalTol);

  const ConditionReport validation = validate_setup(s, {.grid_log2 = c.grid_log2});
  if (!validation.passed()) {
    err << "parseval: setup fails validation; run 'validate' for details\n";
    return kExitCheckFailed;
  }

  const FrameReport rep = parseval_report(f, s, opt);
  emit(c, c.format == "table" ? to_table(rep) : to_json(rep), out);
  for (const auto& w : rep.warnings) err << "warning: " << w << "\n";

  bool ok = false;
  if (rep.signal_norm_sq > 0.0) {
    const double accounted = (rep.j_tail + rep.coset_tail) / rep.signal_norm_sq;
    ok = rep.ratio <= 1.0 + tol && rep.ratio >= 1.0 - tol - accounted;
  }
  err << "parseval: ratio = " << csv_number(rep.ratio) << ", tolerance " << fmt(tol) << ": "
      << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_oep(const Config& c, std::ostream& out, std::ostream& err) {
  GeneralSetup s = load_setup(c);
  if (!c.theta.empty()) {
    s = GeneralSetup(s.ts(), s.psi0_hat(), s.filters(), parse_expr(c.theta));
  }
  if (c.corollary) {
    if (!s.theta()) throw Error(ErrorCode::ThetaMissing, "--corollary needs a theta");
    s = corollary_two_generator(s.psi0_hat(), s.filters().front(), *s.theta(), s.ts(), c.grid_log2);
  }
  const OepResult r = oep_residual(s, c.grid_log2, resolve_interval(c));
  const double tol = c.tol.value_or(kDefaultTolerance);
  const bool ok = r.residual <= tol && r.theta_limit_deviation <= kDefaultLimitTolerance;

  if (c.format == "table") {
    emit(c,
         "quantity,value\noep_residual," + csv_number(r.residual) + "\ntheta_min," +
             csv_number(r.theta_min) + "\ntheta_limit_deviation," +
             csv_number(r.theta_limit_deviation) + "\n",
         out);
  } else {
    ojson doc;
    doc["construction"] = c.corollary ? "two_generator" : "as_given";
    doc["generators"] = s.generator_count();
    doc["grid_log2"] = c.grid_log2;
    doc["oep_residual"] = r.residual;
    doc["theta_min"] = r.theta_min;
    doc["theta_limit_deviation"] = r.theta_limit_deviation;
    doc["tolerance"] = tol;
    doc["limit_tolerance"] = kDefaultLimitTolerance;
    doc["passed"] = ok;
    emit(c, doc.dump(2) + "\n", out);
  }
  err << "oep: residual = " << fmt(r.residual) << ", theta_min = " << fmt(r.theta_min)
      << ", theta limit deviation = " << fmt(r.theta_limit_deviation) << ": "
      << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_telescope(const Config& c, std::ostream& out, std::ostream& err) {
  const GeneralSetup s = load_setup(c);
  const SignalSpec f = load_signal(c);
  const auto [lo, hi] = resolve_j(c, 0, 0);
  const double tol = c.tol.value_or(kTelescopeTol);
  const FrequencyGrid grid = default_grid(c.grid_log2);
  const double norm = norm_sq(f.fhat, f.a, f.b, c.grid_log2);

  bool ok = true;
  std::string table = "j,lhs,rhs,residual,relative\n";
  ojson rows = ojson::array();
  for (int j = lo; j <= hi; ++j) {
    const TelescopeResult t = telescoping_residual(f.fhat, s, j, grid);
    const double rel = norm > 0.0 ? t.residual / norm : t.residual;
    ok = ok && rel <= tol;
    table += std::to_string(j) + "," + csv_number(t.lhs) + "," + csv_number(t.rhs) + "," +
             csv_number(t.residual) + "," + csv_number(rel) + "\n";
    rows.push_back({{"j", j}, {"lhs", t.lhs}, {"rhs", t.rhs}, {"residual", t.residual}, {"relative", rel}});
  }
  if (c.format == "table") {
    emit(c, table, out);
  } else {
    ojson doc;
    doc["signal"] = f.label;
    doc["norm_sq"] = norm;
    doc["tolerance"] = tol;
    doc["levels"] = std::move(rows);
    doc["passed"] = ok;
    emit(c, doc.dump(2) + "\n", out);
  }
  err << "telescope: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kExitOk : kExitCheckFailed;
}

int cmd_levels(const Config& c, std::ostream& out, std::ostream&) {
  const GeneralSetup s = load_setup(c);
  const SignalSpec f = load_signal(c);
  const auto [lo, hi] = resolve_j(c, -10, 10);
  std::vector<int> js;
  for (int j = lo; j <= hi; ++j) js.push_back(j);
  const auto levels = level_profile(f.fhat, s, js, default_grid(c.grid_log2));
  const double norm = norm_sq(f.fhat, f.a, f.b, c.grid_log2);
  if (c.format == "table") {
    std::string text = "j,level_sum\n";
    for (const auto& lv : levels) text += std::to_string(lv.j) + "," + csv_number(lv.value) + "\n";
    emit(c, text, out);
  } else {
    ojson doc;
    doc["signal"] = f.label;
    doc["norm_sq"] = norm;
    ojson rows = ojson::array();
    for (const auto& lv : levels) rows.push_back({{"j", lv.j}, {"level_sum", lv.value}});
    doc["levels"] = std::move(rows);
    emit(c, doc.dump(2) + "\n", out);
  }
  return kExitOk;
}

int cmd_generators(const Config& c, std::ostream& out, std::ostream&) {
  const GeneralSetup s = load_setup(c);
  if (c.samples < 1) throw UsageError("--samples must be >= 1");
  std::vector<FreqExpr> psi;
  for (std::size_t l = 1; l <= s.generator_count(); ++l) psi.push_back(derive_generator(s, l));
  // Evenly spaced samples over [0, 1/2] including both ends.
  std::vector<double> points;
  for (int k = 0; k < c.samples; ++k) {
    points.push_back(c.samples == 1 ? 0.0 : 0.5 * k / (c.samples - 1));
  }
  if (c.format == "table") {
    std::string text = "g";
    for (std::size_t l = 1; l <= psi.size(); ++l) {
      text += ",psi" + std::to_string(l) + "_re,psi" + std::to_string(l) + "_im";
    }
    text += "\n";
    for (double g : points) {
      text += csv_number(g);
      for (const auto& p : psi) {
        const auto v = p.eval(g);
        text += "," + csv_number(v.real()) + "," + csv_number(v.imag());
      }
      text += "\n";
    }
    emit(c, text, out);
    return kExitOk;
  }
  ojson doc = ojson::array();
  for (std::size_t l = 0; l < psi.size(); ++l) {
    ojson samples = ojson::array();
    for (double g : points) {
      const auto v = psi[l].eval(g);
      samples.push_back({{"g", g}, {"re", v.real()}, {"im", v.imag()}});
    }
    doc.push_back({{"ell", l + 1}, {"expr", render(psi[l])}, {"samples", std::move(samples)}});
  }
  emit(c, ojson{{"generators", std::move(doc)}}.dump(2) + "\n", out);
  return kExitOk;
}

void add_setup_options(CLI::App* sub, Config& c) {
  auto* p = sub->add_option("--preset", c.preset, "Built-in setup: ex5.1 or ex5.2");
  auto* f = sub->add_option("--setup", c.setup_path, "Setup JSON file");
  p->excludes(f);
  sub->add_option("--grid-log2", c.grid_log2, "log2 of the quadrature grid size")
      ->check(CLI::Range(FrequencyGrid::kMinLog2, FrequencyGrid::kMaxLog2));
  sub->add_option("--out", c.out_path, "Write the report here instead of stdout");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"report", "table"}));
}

void add_j_options(CLI::App* sub, Config& c) {
  sub->add_option("--jmin", c.j_min, "Lowest level");
  sub->add_option("--jmax", c.j_max, "Highest level");
  sub->add_option("--j", c.j_range, "Level range a..b, or a single level");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Nonuniform wavelet frame construction and verification", "nuframe"};
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "Check the general-setup hypotheses and UEP/OEP identities");
  add_setup_options(validate, c);
  validate->add_option("--tol", c.tol, "Residual tolerance");
  validate->add_option("--interval", c.interval, "Filter-condition interval a..b");

  auto* parseval = app.add_subcommand("parseval", "Compare the truncated frame sum with ||f||^2");
  add_setup_options(parseval, c);
  add_j_options(parseval, c);
  parseval->add_option("--signal", c.signal, "bump(a,b), ind(a,b) or an expression")->required();
  parseval->add_option("--route", c.route, "parseval or direct")->check(CLI::IsMember({"parseval", "direct"}));
  parseval->add_option("--M", c.M, "Coset truncation for the direct route")->check(CLI::PositiveNumber);
  parseval->add_option("--tol", c.tol, "Allowed |ratio - 1|");

  auto* oep = app.add_subcommand("oep", "Evaluate the OEP identity");
  add_setup_options(oep, c);
  oep->add_option("--tol", c.tol, "Residual tolerance");
  oep->add_option("--theta", c.theta, "Override theta");
  oep->add_option("--interval", c.interval, "Interval a..b for the supremum");
  oep->add_flag("--corollary", c.corollary, "Build the two-generator setup from psi0, H0 and theta first");

  auto* telescope = app.add_subcommand("telescope", "Telescoping residual per level");
  add_setup_options(telescope, c);
  add_j_options(telescope, c);
  telescope->add_option("--signal", c.signal, "bump(a,b), ind(a,b) or an expression")->required();
  telescope->add_option("--tol", c.tol, "Residual tolerance relative to ||f||^2");

  auto* levels = app.add_subcommand("levels", "Level sums against psi0 per j");
  add_setup_options(levels, c);
  add_j_options(levels, c);
  levels->add_option("--signal", c.signal, "bump(a,b), ind(a,b) or an expression")->required();

  auto* generators = app.add_subcommand("generators", "Print the derived generators");
  add_setup_options(generators, c);
  generators->add_option("--samples", c.samples, "Sample count over [0, 1/2]");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(c, out, err);
    if (*parseval) return cmd_parseval(c, out, err);
    if (*oep) return cmd_oep(c, out, err);
    if (*telescope) return cmd_telescope(c, out, err);
    if (*levels) return cmd_levels(c, out, err);
    if (*generators) return cmd_generators(c, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::UepPreconditionFailed ? kExitCheckFailed : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace nuframe::cli
