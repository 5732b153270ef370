#include "nuframe/signals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <regex>

#include "nuframe/errors.hpp"
#include "nuframe/parser.hpp"

namespace nuframe {

namespace {

void require_interval(const Rational& a, const Rational& b) {
  if (!(a < b)) {
    throw Error(ErrorCode::BadInterval, "signal needs a < b, got " + a.str() + ", " + b.str());
  }
}

std::string interval_label(std::string_view name, const Rational& a, const Rational& b) {
  return std::string(name) + "(" + a.str() + "," + b.str() + ")";
}

}  // namespace

SignalSpec hann_bump(const Rational& a, const Rational& b) {
  require_interval(a, b);
  const double freq = 2.0 * std::numbers::pi / (b - a).to_double();
  const FreqExpr phase = fx::real_constant(freq) * (fx::var() + fx::constant(-a));
  const FreqExpr profile =
      fx::scale(Rational(1, 2), fx::constant(Rational(1)) - fx::cos(phase));
  return {profile * fx::chi(a, b, true, true), a, b, interval_label("bump", a, b)};
}

SignalSpec indicator_signal(const Rational& a, const Rational& b) {
  require_interval(a, b);
  return {fx::chi(a, b, false, true), a, b, interval_label("ind", a, b)};
}

std::vector<SignalSpec> catalog() {
  return {
      hann_bump(Rational(1, 64), Rational(1, 16)),
      hann_bump(Rational(9, 64), Rational(31, 64)),
      indicator_signal(Rational(1, 8), Rational(1, 2)),
      hann_bump(Rational(1, 4), Rational(2)),
  };
}

double support_probe_max(const SignalSpec& s) {
  const double a = s.a.to_double();
  const double b = s.b.to_double();
  const double band = (b - a) / 64.0;
  double worst = 0.0;
  for (int k = 0; k < 64; ++k) {
    const double off = (k + 0.5) * band;
    worst = std::max(worst, std::abs(s.fhat.eval(a - off)));
    worst = std::max(worst, std::abs(s.fhat.eval(b + off)));
  }
  return worst;
}

SignalSpec signal_from_designator(std::string_view text) {
  static const std::regex designator(R"(^\s*(bump|ind)\s*\(\s*([-+0-9./]+)\s*,\s*([-+0-9./]+)\s*\)\s*$)");
  const std::string str(text);
  std::smatch m;
  if (std::regex_match(str, m, designator)) {
    Rational a;
    Rational b;
    try {
      a = Rational::parse(m[2].str());
      b = Rational::parse(m[3].str());
    } catch (const Error& e) {
      throw Error(ErrorCode::UnsupportedSignal, "bad bound in '" + str + "': " + e.what());
    }
    return m[1] == "bump" ? hann_bump(a, b) : indicator_signal(a, b);
  }
  static const std::regex designator_head(R"(^\s*(bump|ind)\s*\()");
  if (std::regex_search(str, designator_head)) {
    throw Error(ErrorCode::UnsupportedSignal,
                "malformed designator '" + str + "'; expected bump(a,b) or ind(a,b)");
  }
  FreqExpr e = parse_expr(text);
  const SupportBound sb = support_bound(e);
  if (sb.empty) {
    throw Error(ErrorCode::UnsupportedSignal, "signal '" + str + "' is identically zero");
  }
  if (!sb.bounded()) {
    throw Error(ErrorCode::UnsupportedSignal,
                "signal '" + str + "' has no bounded support; multiply by chi(a,b]");
  }
  return {std::move(e), *sb.lo, *sb.hi, str};
}

}  // namespace nuframe
