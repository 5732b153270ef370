// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
// Usage: acceptance <path-to-nuframe-binary> <scratch-dir>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nuframe/analysis.hpp"
#include "nuframe/errors.hpp"
#include "nuframe/parser.hpp"
#include "nuframe/presets.hpp"

using namespace nuframe;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Outcome hypothesis_suite() {
  Timer t;
  const ConditionReport r = validate_setup(preset("ex5.1"), {.grid_log2 = 20});
  const double secs = t.seconds();
  const bool ok = r.refinement_residual <= 1e-10 && r.support_leak <= 1e-10 &&
                  *r.uep_residual <= 1e-10 && secs < 5.0;
  return {ok, "refinement " + sci(r.refinement_residual) + ", support leak " + sci(r.support_leak) +
                  ", uep " + sci(*r.uep_residual) + ", " + sci(secs) + " s"};
}

Outcome parseval_reproduction() {
  Timer t;
  const GeneralSetup s = preset("ex5.2");
  bool ok = true;
  std::string detail;
  for (const SignalSpec& f : {indicator_signal(Rational(1, 8), Rational(1, 2)),
                              hann_bump(Rational(9, 64), Rational(31, 64))}) {
    const FrameReport r = parseval_report(f, s, {.j_min = -4, .j_max = 4});
    ok = ok && std::abs(r.ratio - 1.0) <= 1e-6;
    detail += f.label + " |ratio-1| " + sci(std::abs(r.ratio - 1.0)) + "; ";
  }
  const double secs = t.seconds();
  ok = ok && secs < 10.0;
  return {ok, detail + sci(secs) + " s"};
}

// The direct route runs on 2^17 points per integration window so that
// M h = 2048 * 2^-18 stays below the phase-step guard.
Outcome oracle_equivalence() {
  Timer t;
  bool ok = true;
  double worst = 0.0;
  int compared = 0;
  for (const auto& name : preset_names()) {
    const GeneralSetup s = preset(name);
    for (const SignalSpec& f : catalog()) {
      const double norm = norm_sq(f.fhat, f.a, f.b);
      for (std::size_t l = 1; l <= s.generator_count(); ++l) {
        const FreqExpr psi = derive_generator(s, l);
        for (int j : {-1, 0, 1}) {
          const double identity = lattice_sum_parseval(f.fhat, psi, s.ts(), j, default_grid(20));
          const double direct = lattice_sum_direct(f.fhat, psi, s.ts(), j, 2048, default_grid(17));
          const double rel = std::abs(direct - identity) / std::max(identity, norm * 1e-3);
          worst = std::max(worst, rel);
          ok = ok && rel <= 1e-2;
          ++compared;
        }
      }
    }
  }
  const double secs = t.seconds();
  ok = ok && secs < 300.0;
  return {ok, std::to_string(compared) + " pairs, worst relative gap " + sci(worst) + ", " + sci(secs) + " s"};
}

Outcome telescoping() {
  const GeneralSetup s = preset("ex5.1");
  bool ok = true;
  double worst = 0.0;
  for (const SignalSpec& f : catalog()) {
    const double norm = norm_sq(f.fhat, f.a, f.b);
    for (int j : {0, 1, 2}) {
      const double rel = telescoping_residual(f.fhat, s, j, default_grid()).residual / norm;
      worst = std::max(worst, rel);
      ok = ok && rel <= 1e-8;
    }
  }
  return {ok, "worst residual / ||f||^2 " + sci(worst)};
}

Outcome bessel_bound() {
  std::vector<SignalSpec> signals = catalog();
  std::mt19937_64 rng(35);
  std::uniform_int_distribution<int> pick(1, 511);
  while (signals.size() < 20) {
    int a = pick(rng);
    int b = pick(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    signals.push_back(hann_bump(Rational(a, 256), Rational(b, 256)));
  }
  bool ok = true;
  double worst = 0.0;
  for (const auto& name : preset_names()) {
    const GeneralSetup s = preset(name);
    for (const auto& f : signals) {
      const BesselResult r = bessel_check(f, s, default_grid());
      worst = std::max(worst, r.sum / r.norm_sq);
      ok = ok && r.sum <= (1.0 + 1e-9) * r.norm_sq;
    }
  }
  return {ok, std::to_string(signals.size()) + " signals x 2 presets, max sum/||f||^2 " + sci(worst)};
}

Outcome level_behaviour() {
  const GeneralSetup s = preset("ex5.2");
  const SignalSpec f = hann_bump(Rational(1, 64), Rational(1, 16));
  const double norm = norm_sq(f.fhat, f.a, f.b);
  std::vector<int> low;
  std::vector<int> high;
  for (int j = -12; j <= -5; ++j) low.push_back(j);
  for (int j = 6; j <= 12; ++j) high.push_back(j);
  bool ok = true;
  double worst_low = 0.0;
  double worst_high = 0.0;
  for (const auto& lv : level_profile(f.fhat, s, low, default_grid())) {
    worst_low = std::max(worst_low, lv.value);
    ok = ok && lv.value == 0.0;
  }
  for (const auto& lv : level_profile(f.fhat, s, high, default_grid())) {
    const double rel = std::abs(lv.value - norm) / norm;
    worst_high = std::max(worst_high, rel);
    ok = ok && rel <= 1e-6;
  }
  return {ok, "max level j<=-5 " + sci(worst_low) + ", max |level-||f||^2|/||f||^2 j>=6 " + sci(worst_high)};
}

Outcome oep_machinery() {
  const GeneralSetup s = preset("ex5.2");
  const double residual = oep_residual(s).residual;
  bool ok = residual <= 1e-12;
  std::string detail = "ex5.2 residual " + sci(residual);

  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double drift = 0.0;
  for (const auto& name : preset_names()) {
    const GeneralSetup base = preset(name);
    const GeneralSetup norm = oep_normalize(base);
    for (int k = 0; k < 1000; ++k) {
      const double g = u(rng);
      for (std::size_t l = 0; l < base.filters().size(); ++l) {
        drift = std::max(drift, std::abs(norm.filters()[l](g) - base.filters()[l](g)));
      }
    }
  }
  ok = ok && drift <= 1e-15;
  detail += "; normalize drift " + sci(drift);

  // Corollary setup against an independent grid oracle sup 2 theta(4g) |H0(g)|^2.
  for (const auto& name : preset_names()) {
    const GeneralSetup base = preset(name);
    const FreqExpr& H0 = base.filters()[0];
    const FreqExpr& theta = *base.theta();
    const GeneralSetup cor = corollary_two_generator(base.psi0_hat(), H0, theta, base.ts());
    const FrequencyGrid grid = default_grid();
    double oracle = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      const double g = grid.point(k);
      oracle = std::max(oracle, 2.0 * theta(4.0 * g).real() * std::norm(H0(g)));
    }
    const double got = oep_residual(cor).residual;
    ok = ok && std::abs(got - oracle) <= 1e-10;
    detail += "; " + name + " corollary residual " + sci(got) + " vs oracle " + sci(oracle);
  }
  return {ok, detail};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism(const std::string& exe, const std::filesystem::path& scratch) {
  if (exe.empty()) return {false, "no nuframe binary given"};
  std::vector<std::string> reports;
  for (int run = 1; run <= 2; ++run) {
    const auto out = scratch / ("acceptance_determinism_" + std::to_string(run) + ".json");
    const std::string cmd = "\"" + exe + "\" parseval --preset ex5.2 --signal \"ind(1/8,1/2)\" --out \"" +
                            out.string() + "\" 2>/dev/null";
    if (std::system(cmd.c_str()) != 0) return {false, "run " + std::to_string(run) + " failed"};
    reports.push_back(slurp(out));
  }
  const bool same = !reports[0].empty() && reports[0] == reports[1];
  return {same, std::to_string(reports[0].size()) + " bytes, " + (same ? "identical" : "different")};
}

Outcome parser_suite() {
  bool ok = true;
  int checked = 0;
  const std::vector<std::pair<const char*, FreqExpr>> golden{
      {"sinc(g)*chi(0,1/8]", fx::sinc(fx::var()) * fx::chi(0, Rational(1, 8), false, true)},
      {"chi[0,1/8]", fx::chi(0, Rational(1, 8), true, true)},
      {"cos(g)*cos(2*g)*chi(0,1/32]",
       fx::product({fx::cos(fx::var()), fx::cos(fx::scale(2, fx::var())), fx::chi(0, Rational(1, 32), false, true)})},
      {"cos(2*g)*sin(g)*chi(0,1/32]",
       fx::product({fx::cos(fx::scale(2, fx::var())), fx::sin(fx::var()), fx::chi(0, Rational(1, 32), false, true)})},
      {"sin(2*g)*chi(0,1/32]", fx::sin(fx::scale(2, fx::var())) * fx::chi(0, Rational(1, 32), false, true)},
      {"1 - chi(0,1/32]", fx::constant(1) - fx::chi(0, Rational(1, 32), false, true)},
  };
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const auto& [text, tree] : golden) {
    const FreqExpr e = parse_expr(text);
    const FreqExpr back = parse_expr(render(e));
    ok = ok && structurally_equal(e, tree) && structurally_equal(back, e);
    for (int k = 0; k < 1000; ++k) {
      const double g = u(rng);
      ok = ok && e(g) == back(g);
    }
    ++checked;
  }
  const std::vector<std::pair<const char*, std::size_t>> malformed{
      {"sin(g", 5}, {"2*+g", 2}, {"chi(0,1/8", 9}, {"1/0", 2}, {"cos(2*g)*", 9}, {"chi[0;1]", 5}, {"g)", 1}};
  for (const auto& [text, offset] : malformed) {
    try {
      (void)parse_expr(text);
      ok = false;
    } catch (const Error& e) {
      ok = ok && e.code() == ErrorCode::SyntaxError && e.offset() == offset;
    }
    ++checked;
  }
  return {ok, std::to_string(checked) + " inputs"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::string exe = argc > 1 ? argv[1] : "";
  const std::filesystem::path scratch = argc > 2 ? argv[2] : std::filesystem::temp_directory_path();

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 ex5.1 hypothesis suite", hypothesis_suite},
      {"2 ex5.2 Parseval reproduction", parseval_reproduction},
      {"3 oracle equivalence", oracle_equivalence},
      {"4 telescoping identity", telescoping},
      {"5 Bessel bound", bessel_bound},
      {"6 level behaviour", level_behaviour},
      {"7 OEP machinery", oep_machinery},
      {"8 report determinism", [&] { return determinism(exe, scratch); }},
      {"9 parser round trip and errors", parser_suite},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
