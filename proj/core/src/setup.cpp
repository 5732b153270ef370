#include "nuframe/setup.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nuframe/errors.hpp"
#include "nuframe/grid.hpp"

namespace nuframe {

namespace {

constexpr double kThetaImagTol = 1e-12;
const Rational kSupportScanMax(4);

template <class F>
double grid_max(const FrequencyGrid& grid, F&& f) {
  double best = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) best = std::max(best, f(grid.point(k)));
  return best;
}

double abs2(std::complex<double> z) { return std::norm(z); }

// Samples theta at g and 2N g over the grid; throws ThetaNotPositive at the
// first bad value and otherwise returns the smallest sample.
double theta_min_on(const FreqExpr& theta, const FreqExpr& theta_dilated,
                    const FrequencyGrid& grid) {
  double lowest = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double g = grid.point(k);
    for (const FreqExpr* t : {&theta, &theta_dilated}) {
      const std::complex<double> v = t->eval(g);
      if (!(v.real() > 0.0) || std::abs(v.imag()) > kThetaImagTol) {
        throw Error(ErrorCode::ThetaNotPositive,
                    std::string(t == &theta ? "theta(g)" : "theta(2N g)") + " = (" +
                        std::to_string(v.real()) + ", " + std::to_string(v.imag()) +
                        ") at g = " + std::to_string(g));
      }
      lowest = std::min(lowest, v.real());
    }
  }
  return lowest;
}

const FreqExpr& require_theta(const GeneralSetup& s) {
  if (!s.theta()) throw Error(ErrorCode::ThetaMissing, "setup has no theta");
  return *s.theta();
}

Rational dilation(const GeneralSetup& s) { return Rational(s.ts().dilation()); }

}  // namespace

Interval working_interval() { return {Rational(0), Rational(1, 2)}; }

GeneralSetup::GeneralSetup(TranslationSet ts, FreqExpr psi0_hat, std::vector<FreqExpr> filters,
                           std::optional<FreqExpr> theta)
    : ts_(ts),
      psi0_hat_(std::move(psi0_hat)),
      filters_(std::move(filters)),
      theta_(std::move(theta)) {
  if (filters_.size() < 2) {
    throw Error(ErrorCode::TooFewFilters,
                "need H_0 and at least one wavelet filter, got " +
                    std::to_string(filters_.size()) + " filters");
  }
}

bool ConditionReport::passed() const {
  bool hypotheses = true;
  bool uep = false;
  bool oep_all = false;
  bool oep_seen = false;
  for (const auto& c : checks) {
    switch (c.group) {
      case Check::Group::Hypothesis:
        hypotheses = hypotheses && c.passed;
        break;
      case Check::Group::Uep:
        uep = c.passed;
        break;
      case Check::Group::Oep:
        oep_all = (oep_seen ? oep_all : true) && c.passed;
        oep_seen = true;
        break;
    }
  }
  return hypotheses && (uep || (oep_seen && oep_all));
}

double limit_deviation_at_zero(const FreqExpr& e) {
  double worst = 0.0;
  for (int k = 12; k <= 40; ++k) {
    worst = std::max(worst, std::abs(e.eval(std::ldexp(1.0, -k)) - 1.0));
  }
  return worst;
}

ConditionReport validate_setup(const GeneralSetup& s, const ValidateOptions& options) {
  if (options.grid_log2 < 10) throw Error(ErrorCode::BadGrid, "validate_setup needs grid_log2 >= 10");
  if (!(options.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tolerance must be positive");

  ConditionReport report;
  report.grid_log2 = options.grid_log2;
  report.interval = options.interval;
  const double inf = std::numeric_limits<double>::infinity();
  auto add = [&](std::string name, double value, double tol, Check::Group group) {
    const bool ok = std::isfinite(value) && value <= tol;
    report.checks.push_back({std::move(name), group, value, tol, ok});
  };
  // Evaluation errors (negative sqrt and the like) become failed checks.
  auto guarded = [&](auto&& compute) -> double {
    try {
      return compute();
    } catch (const Error&) {
      return inf;
    }
  };

  const FreqExpr& psi0 = s.psi0_hat();
  const FreqExpr& H0 = s.filters().front();
  const Rational quarter = s.support_limit();

  report.refinement_residual = guarded([&] {
    const FreqExpr psi0_dilated = dilate_arg(psi0, dilation(s));
    return grid_max(FrequencyGrid(Rational(0), quarter, options.grid_log2), [&](double g) {
      return std::abs(psi0_dilated.eval(g) - H0.eval(g) * psi0.eval(g));
    });
  });
  add("refinement", report.refinement_residual, options.tol, Check::Group::Hypothesis);

  report.support_leak = guarded([&] {
    auto sup_abs = [&](double g) { return std::abs(psi0.eval(g)); };
    return std::max(grid_max(FrequencyGrid(quarter, kSupportScanMax, options.grid_log2), sup_abs),
                    grid_max(FrequencyGrid(-kSupportScanMax, Rational(0), options.grid_log2),
                             sup_abs));
  });
  add("support", report.support_leak, options.tol, Check::Group::Hypothesis);

  report.limit_deviation = guarded([&] { return limit_deviation_at_zero(psi0); });
  add("limit", report.limit_deviation, options.limit_tol, Check::Group::Hypothesis);

  for (std::size_t l = 0; l < s.filters().size(); ++l) {
    const double sup = guarded([&] {
      return essential_sup(s.filters()[l], options.interval.lo, options.interval.hi,
                           options.grid_log2);
    });
    report.filter_sup.push_back(sup);
    // Boundedness only: any finite sup passes.
    report.checks.push_back({"bounded_H" + std::to_string(l), Check::Group::Hypothesis, sup,
                             inf, std::isfinite(sup)});
  }

  report.uep_residual =
      guarded([&] { return uep_residual(s, options.grid_log2, options.interval); });
  add("uep", *report.uep_residual, options.tol, Check::Group::Uep);

  if (s.theta()) {
    double theta_limit = inf;
    report.oep_residual = guarded([&] {
      const OepResult r = oep_residual(s, options.grid_log2, options.interval);
      theta_limit = r.theta_limit_deviation;
      return r.residual;
    });
    add("oep", *report.oep_residual, options.tol, Check::Group::Oep);
    add("theta_limit", theta_limit, options.limit_tol, Check::Group::Oep);
  }
  return report;
}

FreqExpr derive_generator(const GeneralSetup& s, std::size_t ell) {
  if (ell < 1 || ell > s.generator_count()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "generator index " + std::to_string(ell) + " outside [1, " +
                    std::to_string(s.generator_count()) + "]");
  }
  const Rational shrink = dilation(s).reciprocal();
  return dilate_arg(s.filters()[ell], shrink) * dilate_arg(s.psi0_hat(), shrink);
}

double uep_residual(const GeneralSetup& s, int grid_log2, const Interval& interval) {
  const FrequencyGrid grid(interval.lo, interval.hi, grid_log2);
  return grid_max(grid, [&](double g) {
    double total = 0.0;
    for (const auto& h : s.filters()) total += abs2(h.eval(g));
    return std::abs(total - 1.0);
  });
}

OepResult oep_residual(const GeneralSetup& s, int grid_log2, const Interval& interval) {
  const FreqExpr& theta = require_theta(s);
  const FreqExpr theta_dilated = dilate_arg(theta, dilation(s));
  const FrequencyGrid grid(interval.lo, interval.hi, grid_log2);

  OepResult out;
  out.theta_min = theta_min_on(theta, theta_dilated, grid);
  out.theta_limit_deviation = limit_deviation_at_zero(theta);
  out.residual = grid_max(grid, [&](double g) {
    double lhs = theta_dilated.eval(g).real() * abs2(s.filters()[0].eval(g));
    for (std::size_t l = 1; l < s.filters().size(); ++l) lhs += abs2(s.filters()[l].eval(g));
    return std::abs(lhs - theta.eval(g).real());
  });
  return out;
}

GeneralSetup oep_normalize(const GeneralSetup& s, int grid_log2) {
  const FreqExpr& theta = require_theta(s);
  const FreqExpr theta_dilated = dilate_arg(theta, dilation(s));
  const Interval w = working_interval();
  theta_min_on(theta, theta_dilated, FrequencyGrid(w.lo, w.hi, grid_log2));

  const FreqExpr inv_sqrt_theta = fx::positive_reciprocal(fx::sqrt(theta));
  std::vector<FreqExpr> filters;
  filters.reserve(s.filters().size());
  filters.push_back(fx::product({fx::sqrt(theta_dilated), inv_sqrt_theta, s.filters()[0]}));
  for (std::size_t l = 1; l < s.filters().size(); ++l) {
    filters.push_back(inv_sqrt_theta * s.filters()[l]);
  }
  return GeneralSetup(s.ts(), fx::sqrt(theta) * s.psi0_hat(), std::move(filters),
                      fx::constant(Rational(1)));
}

GeneralSetup corollary_two_generator(const FreqExpr& psi0_hat, const FreqExpr& H0,
                                     const FreqExpr& theta, const TranslationSet& ts,
                                     int grid_log2) {
  const FreqExpr theta_dilated = dilate_arg(theta, Rational(ts.dilation()));
  const Interval w = working_interval();
  theta_min_on(theta, theta_dilated, FrequencyGrid(w.lo, w.hi, grid_log2));

  std::vector<FreqExpr> filters{
      H0,
      fx::product({fx::sqrt(theta_dilated), H0, fx::imaginary_unit()}),
      fx::sqrt(theta),
  };
  return GeneralSetup(ts, psi0_hat, std::move(filters), theta);
}

}  // namespace nuframe
