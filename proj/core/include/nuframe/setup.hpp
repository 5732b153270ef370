#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nuframe/expr.hpp"
#include "nuframe/lattice.hpp"
#include "nuframe/rational.hpp"

namespace nuframe {

inline constexpr int kDefaultGridLog2 = 20;
inline constexpr double kDefaultTolerance = 1e-10;
/// Tolerance for the one-sided limit probes at 0+. The probe runs down from
/// g = 2^-12, where a smooth symbol like sin(g)/g still differs from 1 by
/// about 1e-8.
inline constexpr double kDefaultLimitTolerance = 1e-6;

/// Closed interval [lo, hi] with exact endpoints.
struct Interval {
  Rational lo;
  Rational hi;
};

/// Interval on which all filter-condition suprema are taken unless the
/// caller widens it for diagnostics.
Interval working_interval();

/// A scaling symbol psi0_hat, filters H_0..H_n (n >= 1) and an optional
/// OEP weight theta, over a validated translation set.
class GeneralSetup {
 public:
  GeneralSetup(TranslationSet ts, FreqExpr psi0_hat, std::vector<FreqExpr> filters,
               std::optional<FreqExpr> theta = std::nullopt);

  const TranslationSet& ts() const noexcept { return ts_; }
  const FreqExpr& psi0_hat() const noexcept { return psi0_hat_; }
  const std::vector<FreqExpr>& filters() const noexcept { return filters_; }
  const std::optional<FreqExpr>& theta() const noexcept { return theta_; }

  /// n: number of wavelet generators.
  std::size_t generator_count() const noexcept { return filters_.size() - 1; }

  /// 1 / (4N): right end of the admissible support of psi0_hat.
  Rational support_limit() const { return Rational(1, 4 * ts_.N()); }

 private:
  TranslationSet ts_;
  FreqExpr psi0_hat_;
  std::vector<FreqExpr> filters_;
  std::optional<FreqExpr> theta_;
};

struct Check {
  enum class Group { Hypothesis, Uep, Oep };
  std::string name;
  Group group = Group::Hypothesis;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
};

struct ConditionReport {
  double refinement_residual = 0.0;
  double support_leak = 0.0;
  double limit_deviation = 0.0;
  std::vector<double> filter_sup;
  std::optional<double> uep_residual;
  std::optional<double> oep_residual;
  std::vector<Check> checks;
  int grid_log2 = kDefaultGridLog2;
  Interval interval;

  /// All general-setup hypotheses hold and either the UEP identity or
  /// (with theta) the OEP identity holds.
  bool passed() const;
};

struct ValidateOptions {
  int grid_log2 = kDefaultGridLog2;
  double tol = kDefaultTolerance;
  double limit_tol = kDefaultLimitTolerance;
  Interval interval = working_interval();
};

ConditionReport validate_setup(const GeneralSetup& s, const ValidateOptions& options = {});

/// psi_l_hat(g) = H_l(g / 2N) psi0_hat(g / 2N) for l in 1..n.
FreqExpr derive_generator(const GeneralSetup& s, std::size_t ell);

/// sup over the grid of | sum_l |H_l|^2 - 1 |.
double uep_residual(const GeneralSetup& s, int grid_log2 = kDefaultGridLog2,
                    const Interval& interval = working_interval());

struct OepResult {
  double residual = 0.0;
  double theta_min = 0.0;
  double theta_limit_deviation = 0.0;
};

/// sup over the grid of | theta(2N g)|H_0|^2 + sum_{l>=1} |H_l|^2 - theta(g) |,
/// after checking theta > 0 at every point where it is sampled.
OepResult oep_residual(const GeneralSetup& s, int grid_log2 = kDefaultGridLog2,
                       const Interval& interval = working_interval());

/// Rewrites an OEP setup into a UEP setup with the same generators:
///   H0~ = sqrt(theta(2N g)) / sqrt(theta(g)) H0,
///   Hl~ = Hl / sqrt(theta(g)),  psi0~ = sqrt(theta) psi0.
/// The result carries theta = 1.
GeneralSetup oep_normalize(const GeneralSetup& s, int grid_log2 = kDefaultGridLog2);

/// Three-filter setup (H0, sqrt(theta(2N g)) H0 i, sqrt(theta)) exactly as
/// the two-generator construction prescribes. The OEP identity is not
/// asserted; run oep_residual on the result.
GeneralSetup corollary_two_generator(const FreqExpr& psi0_hat, const FreqExpr& H0,
                                     const FreqExpr& theta, const TranslationSet& ts,
                                     int grid_log2 = kDefaultGridLog2);

/// Max over g = 2^-k, k = 12..40, of |e(g) - 1|.
double limit_deviation_at_zero(const FreqExpr& e);

}  // namespace nuframe
