#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nuframe/expr.hpp"
#include "nuframe/grid.hpp"
#include "nuframe/lattice.hpp"
#include "nuframe/setup.hpp"
#include "nuframe/signals.hpp"

namespace nuframe {

/// Frame sums are integrals over [0, 1/2]; this is the default outer grid.
FrequencyGrid default_grid(int log2_n = kDefaultGridLog2);

inline constexpr std::int64_t kDefaultCosetTruncation = 2048;
/// Largest M * h the direct route accepts.
inline constexpr double kMaxPhaseStep = 0.01;

/// Midpoint rule h * sum(values), compensated, ascending index order.
std::complex<double> quad(std::span<const std::complex<double>> values,
                          const FrequencyGrid& grid);

std::vector<std::complex<double>> sample(const FreqExpr& e, const FrequencyGrid& grid);

/// Samples of sum_{|k| <= k_range} e(g + N k) on a grid over [0, N].
std::vector<std::complex<double>> periodize(const FreqExpr& e, std::int64_t N,
                                            std::int64_t k_range, const FrequencyGrid& grid);

/// <f, L^j T_lambda g> = integral of (2N)^{j/2} fhat((2N)^j x) conj(ghat(x))
/// e^{2 pi i lambda x} over the grid.
std::complex<double> coefficient(const FreqExpr& f_hat, const FreqExpr& g_hat,
                                 const TranslationSet& ts, int j, const Rational& lambda,
                                 const FrequencyGrid& grid);

/// Sub-grid actually integrated for the pair (f_hat at level j, g_hat):
/// the support bounds are intersected with the outer interval and the
/// result is widened to two adjacent dyadic cells of the outer interval, so
/// dyadic breakpoints of the outer grid stay on cell edges. Empty when the
/// integrand vanishes identically.
std::optional<FrequencyGrid> integration_window(const FreqExpr& f_hat, const FreqExpr& g_hat,
                                                const TranslationSet& ts, int j,
                                                const FrequencyGrid& outer);

struct DirectLatticeSum {
  double total = 0.0;
  double even_coset = 0.0;  // lambda in 2Z
  double odd_coset = 0.0;   // lambda in r/N + 2Z
  /// |coefficient|^2 summed over the outer half of the window, |m| > M/2;
  /// for O(1/m^2) coefficient decay this approximates the truncated tail.
  double tail_estimate = 0.0;
  double step = 0.0;
};

/// Brute force: sum over lambda in enumerate(ts, -M, M) of |<f, L^j T_lambda g>|^2.
/// Throws TruncationGuard when M * h exceeds kMaxPhaseStep.
DirectLatticeSum lattice_sum_direct_detail(const FreqExpr& f_hat, const FreqExpr& g_hat,
                                           const TranslationSet& ts, int j, std::int64_t M,
                                           const FrequencyGrid& grid);

double lattice_sum_direct(const FreqExpr& f_hat, const FreqExpr& g_hat, const TranslationSet& ts,
                          int j, std::int64_t M, const FrequencyGrid& grid);

/// Closed form of the full lambda sum: integral over [0, 1/2] of
/// |(2N)^{j/2} fhat((2N)^j x) ghat(x)|^2. Requires supp ghat in [0, 1/2];
/// throws SupportViolation when mass is found outside.
double lattice_sum_parseval(const FreqExpr& f_hat, const FreqExpr& g_hat,
                            const TranslationSet& ts, int j, const FrequencyGrid& grid);

struct LevelValue {
  int j = 0;
  double value = 0.0;
};

std::vector<LevelValue> level_profile(const FreqExpr& f_hat, const GeneralSetup& s,
                                      std::span<const int> j_list, const FrequencyGrid& grid);

struct BesselResult {
  double sum = 0.0;
  double norm_sq = 0.0;
  bool bound_ok = false;
};

inline constexpr double kBesselSlack = 1e-9;

BesselResult bessel_check(const SignalSpec& f, const GeneralSetup& s, const FrequencyGrid& grid);

struct TelescopeResult {
  double lhs = 0.0;  // sum_{l=0}^{n} level sum of psi_l at j - 1
  double rhs = 0.0;  // level sum of psi_0 at j
  double residual = 0.0;
};

inline constexpr double kTelescopeUepLimit = 1e-8;

TelescopeResult telescoping_residual(const FreqExpr& f_hat, const GeneralSetup& s, int j,
                                     const FrequencyGrid& grid);

/// Midpoint quadrature of |fhat|^2 over [a, b].
double norm_sq(const FreqExpr& f_hat, const Rational& a, const Rational& b,
               int log2_n = kDefaultGridLog2);

enum class Route { ParsevalIdentity, DirectOracle };

std::string to_string(Route route);

struct LevelSum {
  std::size_t ell = 0;
  int j = 0;
  double value = 0.0;
};

struct FrameReport {
  Route route = Route::ParsevalIdentity;
  std::int64_t N = 1;
  std::int64_t r = 1;
  int grid_log2 = kDefaultGridLog2;
  Rational grid_a;
  Rational grid_b;
  int j_min = 0;
  int j_max = 0;
  std::optional<std::int64_t> M;
  std::string signal_label;
  Rational support_a;
  Rational support_b;
  std::vector<LevelSum> levels;  // ordered by (ell, j)
  double total = 0.0;
  double signal_norm_sq = 0.0;
  double ratio = 0.0;
  double negative_mass = 0.0;   // |fhat|^2 mass below 0
  double j_tail = 0.0;          // positive mass outside the covered dilation range
  double coset_tail = 0.0;      // direct route only
  std::vector<std::string> warnings;
};

struct ReportOptions {
  int j_min = -4;
  int j_max = 4;
  Route route = Route::ParsevalIdentity;
  std::int64_t M = kDefaultCosetTruncation;
  int grid_log2 = kDefaultGridLog2;
};

/// Sum over l = 1..n and j in [j_min, j_max] of the level sums of the
/// derived generators, compared against ||f||^2.
FrameReport parseval_report(const SignalSpec& f, const GeneralSetup& s,
                            const ReportOptions& options = {});

}  // namespace nuframe
