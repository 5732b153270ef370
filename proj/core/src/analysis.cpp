#include "nuframe/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "nuframe/errors.hpp"

namespace nuframe {

namespace {

using cplx = std::complex<double>;

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Phases are recomputed from scratch every kReseed rotations.
constexpr std::int64_t kReseed = 512;
constexpr std::size_t kBlock = 256;
const Rational kScanMax(4);

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double level_scale(const TranslationSet& ts, int j) {
  return Rational::pow(Rational(ts.dilation()), j).to_double();
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6e", v);
  return buf;
}

// Largest dyadic refinement of [A, B] in which two adjacent cells still
// cover [lo, hi].
FrequencyGrid dyadic_window(const Rational& lo, const Rational& hi, const FrequencyGrid& outer) {
  const Rational A = outer.a();
  const Rational L = outer.b() - outer.a();
  Rational best_lo = outer.a();
  Rational best_hi = outer.b();
  try {
    for (int p = 1; p <= 48; ++p) {
      const Rational cells = Rational::pow(Rational(2), p);
      const Rational cell = L / cells;
      std::int64_t k = ((lo - A) / cell).floor();
      k = std::min(k, cells.num() - 2);
      const Rational start = A + cell * Rational(k);
      const Rational end = start + cell * Rational(2);
      if (start > lo || end < hi) break;
      best_lo = start;
      best_hi = end;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Overflow) throw;
  }
  return FrequencyGrid(best_lo, best_hi, outer.log2_n());
}

void check_support_within_half(const FreqExpr& g_hat) {
  if (support_bound(g_hat).contained_in(Rational(0), Rational(1, 2))) return;
  constexpr int kScanLog2 = 14;
  for (const auto& [a, b] : {std::pair{-kScanMax, Rational(0)}, std::pair{Rational(1, 2), kScanMax}}) {
    const FrequencyGrid scan(a, b, kScanLog2);
    for (std::size_t k = 0; k < scan.size(); ++k) {
      const double g = scan.point(k);
      if (g_hat.eval(g) != cplx(0.0, 0.0)) {
        throw Error(ErrorCode::SupportViolation,
                    "generator is nonzero at g = " + std::to_string(g) + ", outside [0, 1/2]");
      }
    }
  }
}

// Sums the current phase-shifted samples, then advances each by its
// per-step rotation. Blocked lanes keep the inner loop vectorizable; block
// partials are combined with compensation.
cplx sum_then_rotate(std::vector<double>& pr, std::vector<double>& pi,
                     const std::vector<double>& wr, const std::vector<double>& wi) {
  CompensatedSum sr;
  CompensatedSum si;
  const std::size_t n = pr.size();
  double* __restrict xr = pr.data();
  double* __restrict xi = pi.data();
  const double* __restrict cr = wr.data();
  const double* __restrict ci = wi.data();
  for (std::size_t start = 0; start < n; start += kBlock) {
    const std::size_t end = std::min(n, start + kBlock);
    double ar[4] = {0.0, 0.0, 0.0, 0.0};
    double ai[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t k = start;
    for (; k + 4 <= end; k += 4) {
      for (std::size_t l = 0; l < 4; ++l) {
        const double re = xr[k + l];
        const double im = xi[k + l];
        ar[l] += re;
        ai[l] += im;
        xr[k + l] = re * cr[k + l] - im * ci[k + l];
        xi[k + l] = re * ci[k + l] + im * cr[k + l];
      }
    }
    for (; k < end; ++k) {
      const double re = xr[k];
      const double im = xi[k];
      ar[0] += re;
      ai[0] += im;
      xr[k] = re * cr[k] - im * ci[k];
      xi[k] = re * ci[k] + im * cr[k];
    }
    sr.add((ar[0] + ar[1]) + (ar[2] + ar[3]));
    si.add((ai[0] + ai[1]) + (ai[2] + ai[3]));
  }
  return {sr.value(), si.value()};
}

// Coefficients for lambda = offset + 2m, m = -M..M, over the nonzero
// samples (g_k, F_k).
std::vector<cplx> coset_coefficients(const std::vector<double>& gamma,
                                     const std::vector<cplx>& F, double offset,
                                     std::int64_t M, double h) {
  const std::size_t n = gamma.size();
  std::vector<double> pr(n), pi(n), wr(n), wi(n);
  for (std::size_t k = 0; k < n; ++k) {
    wr[k] = std::cos(2.0 * kTwoPi * gamma[k]);
    wi[k] = std::sin(2.0 * kTwoPi * gamma[k]);
  }
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(2 * M + 1));
  for (std::int64_t m = -M; m <= M; ++m) {
    if ((m + M) % kReseed == 0) {
      const double lambda = offset + 2.0 * static_cast<double>(m);
      for (std::size_t k = 0; k < n; ++k) {
        const cplx v = F[k] * std::polar(1.0, kTwoPi * lambda * gamma[k]);
        pr[k] = v.real();
        pi[k] = v.imag();
      }
    }
    out.push_back(h * sum_then_rotate(pr, pi, wr, wi));
  }
  return out;
}

}  // namespace

FrequencyGrid default_grid(int log2_n) { return FrequencyGrid(Rational(0), Rational(1, 2), log2_n); }

cplx quad(std::span<const cplx> values, const FrequencyGrid& grid) {
  if (values.size() != grid.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(values.size()) + " values for " +
                                               std::to_string(grid.size()) + " grid points");
  }
  CompensatedSum re;
  CompensatedSum im;
  for (const cplx& v : values) {
    re.add(v.real());
    im.add(v.imag());
  }
  return grid.step() * cplx(re.value(), im.value());
}

std::vector<cplx> sample(const FreqExpr& e, const FrequencyGrid& grid) {
  std::vector<cplx> out(grid.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = e.eval(grid.point(k));
  return out;
}

std::vector<cplx> periodize(const FreqExpr& e, std::int64_t N, std::int64_t k_range,
                            const FrequencyGrid& grid) {
  if (N < 1 || k_range < 0) throw Error(ErrorCode::InvalidArgument, "periodize needs N >= 1, k_range >= 0");
  std::vector<cplx> out(grid.size());
  const double period = static_cast<double>(N);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double g = grid.point(i);
    cplx acc = 0.0;
    for (std::int64_t k = -k_range; k <= k_range; ++k) acc += e.eval(g + period * static_cast<double>(k));
    out[i] = acc;
  }
  return out;
}

cplx coefficient(const FreqExpr& f_hat, const FreqExpr& g_hat, const TranslationSet& ts, int j,
                 const Rational& lambda, const FrequencyGrid& grid) {
  const double s = level_scale(ts, j);
  const double amp = std::sqrt(s);
  const double lam = lambda.to_double();
  std::vector<cplx> values(grid.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    const double g = grid.point(k);
    values[k] = amp * f_hat.eval(s * g) * std::conj(g_hat.eval(g)) *
                std::polar(1.0, kTwoPi * lam * g);
  }
  return quad(values, grid);
}

std::optional<FrequencyGrid> integration_window(const FreqExpr& f_hat, const FreqExpr& g_hat,
                                                const TranslationSet& ts, int j,
                                                const FrequencyGrid& outer) {
  const Rational inv_scale = Rational::pow(Rational(ts.dilation()), -j);
  const SupportBound window = SupportBound::interval(outer.a(), outer.b())
                                  .intersect(support_bound(g_hat))
                                  .intersect(support_bound(f_hat).scaled(inv_scale));
  if (window.empty || !(*window.lo < *window.hi)) return std::nullopt;
  return dyadic_window(*window.lo, *window.hi, outer);
}

DirectLatticeSum lattice_sum_direct_detail(const FreqExpr& f_hat, const FreqExpr& g_hat,
                                           const TranslationSet& ts, int j, std::int64_t M,
                                           const FrequencyGrid& grid) {
  if (M < 1) throw Error(ErrorCode::InvalidArgument, "coset truncation M must be >= 1");
  DirectLatticeSum out;
  const auto window = integration_window(f_hat, g_hat, ts, j, grid);
  if (!window) return out;
  const double h = window->step();
  out.step = h;
  if (static_cast<double>(M) * h > kMaxPhaseStep) {
    throw Error(ErrorCode::TruncationGuard,
                "M * h = " + sci(static_cast<double>(M) * h) + " exceeds " + sci(kMaxPhaseStep) +
                    "; refine the grid or lower M");
  }

  const double s = level_scale(ts, j);
  const double amp = std::sqrt(s);
  std::vector<double> gamma;
  std::vector<cplx> F;
  for (std::size_t k = 0; k < window->size(); ++k) {
    const double g = window->point(k);
    const cplx v = amp * f_hat.eval(s * g) * std::conj(g_hat.eval(g));
    if (v != cplx(0.0, 0.0)) {
      gamma.push_back(g);
      F.push_back(v);
    }
  }
  if (F.empty()) return out;

  const std::vector<cplx> even = coset_coefficients(gamma, F, 0.0, M, h);
  const std::vector<cplx> odd = coset_coefficients(gamma, F, ts.offset().to_double(), M, h);

  CompensatedSum total;
  CompensatedSum even_sum;
  CompensatedSum odd_sum;
  CompensatedSum tail;
  // Ascending lambda: 2m < r/N + 2m < 2m + 2.
  for (std::int64_t m = -M; m <= M; ++m) {
    const std::size_t idx = static_cast<std::size_t>(m + M);
    const double e2 = std::norm(even[idx]);
    const double o2 = std::norm(odd[idx]);
    total.add(e2);
    total.add(o2);
    even_sum.add(e2);
    odd_sum.add(o2);
    if (2 * std::abs(m) > M) {
      tail.add(e2);
      tail.add(o2);
    }
  }
  out.total = total.value();
  out.even_coset = even_sum.value();
  out.odd_coset = odd_sum.value();
  out.tail_estimate = tail.value();
  return out;
}

double lattice_sum_direct(const FreqExpr& f_hat, const FreqExpr& g_hat, const TranslationSet& ts,
                          int j, std::int64_t M, const FrequencyGrid& grid) {
  return lattice_sum_direct_detail(f_hat, g_hat, ts, j, M, grid).total;
}

double lattice_sum_parseval(const FreqExpr& f_hat, const FreqExpr& g_hat,
                            const TranslationSet& ts, int j, const FrequencyGrid& grid) {
  check_support_within_half(g_hat);
  const auto window = integration_window(f_hat, g_hat, ts, j, grid);
  if (!window) return 0.0;
  const double s = level_scale(ts, j);
  CompensatedSum acc;
  for (std::size_t k = 0; k < window->size(); ++k) {
    const double g = window->point(k);
    acc.add(std::norm(f_hat.eval(s * g)) * std::norm(g_hat.eval(g)));
  }
  return s * window->step() * acc.value();
}

std::vector<LevelValue> level_profile(const FreqExpr& f_hat, const GeneralSetup& s,
                                      std::span<const int> j_list, const FrequencyGrid& grid) {
  std::vector<LevelValue> out;
  out.reserve(j_list.size());
  for (const int j : j_list) {
    out.push_back({j, lattice_sum_parseval(f_hat, s.psi0_hat(), s.ts(), j, grid)});
  }
  return out;
}

BesselResult bessel_check(const SignalSpec& f, const GeneralSetup& s, const FrequencyGrid& grid) {
  BesselResult out;
  out.sum = lattice_sum_parseval(f.fhat, s.psi0_hat(), s.ts(), 0, grid);
  out.norm_sq = norm_sq(f.fhat, f.a, f.b, grid.log2_n());
  out.bound_ok = out.sum <= (1.0 + kBesselSlack) * out.norm_sq;
  return out;
}

TelescopeResult telescoping_residual(const FreqExpr& f_hat, const GeneralSetup& s, int j,
                                     const FrequencyGrid& grid) {
  const double uep = uep_residual(s, grid.log2_n());
  if (!(uep <= kTelescopeUepLimit)) {
    throw Error(ErrorCode::UepPreconditionFailed,
                "uep residual " + sci(uep) + " exceeds " + sci(kTelescopeUepLimit));
  }
  TelescopeResult out;
  CompensatedSum lhs;
  lhs.add(lattice_sum_parseval(f_hat, s.psi0_hat(), s.ts(), j - 1, grid));
  for (std::size_t l = 1; l <= s.generator_count(); ++l) {
    lhs.add(lattice_sum_parseval(f_hat, derive_generator(s, l), s.ts(), j - 1, grid));
  }
  out.lhs = lhs.value();
  out.rhs = lattice_sum_parseval(f_hat, s.psi0_hat(), s.ts(), j, grid);
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

double norm_sq(const FreqExpr& f_hat, const Rational& a, const Rational& b, int log2_n) {
  const FrequencyGrid grid(a, b, log2_n);
  CompensatedSum acc;
  for (std::size_t k = 0; k < grid.size(); ++k) acc.add(std::norm(f_hat.eval(grid.point(k))));
  return grid.step() * acc.value();
}

std::string to_string(Route route) {
  return route == Route::ParsevalIdentity ? "parseval" : "direct";
}

FrameReport parseval_report(const SignalSpec& f, const GeneralSetup& s,
                            const ReportOptions& options) {
  if (options.j_min > options.j_max) {
    throw Error(ErrorCode::InvalidArgument, "j_min must not exceed j_max");
  }
  const FrequencyGrid grid = default_grid(options.grid_log2);
  const TranslationSet& ts = s.ts();

  FrameReport rep;
  rep.route = options.route;
  rep.N = ts.N();
  rep.r = ts.r();
  rep.grid_log2 = options.grid_log2;
  rep.grid_a = grid.a();
  rep.grid_b = grid.b();
  rep.j_min = options.j_min;
  rep.j_max = options.j_max;
  if (options.route == Route::DirectOracle) rep.M = options.M;
  rep.signal_label = f.label;
  rep.support_a = f.a;
  rep.support_b = f.b;

  std::vector<FreqExpr> generators;
  for (std::size_t l = 1; l <= s.generator_count(); ++l) generators.push_back(derive_generator(s, l));

  CompensatedSum total;
  CompensatedSum coset_tail;
  for (std::size_t l = 0; l < generators.size(); ++l) {
    const FreqExpr& psi = generators[l];
    if (options.route == Route::ParsevalIdentity) check_support_within_half(psi);
    for (int j = options.j_min; j <= options.j_max; ++j) {
      double value = 0.0;
      if (options.route == Route::ParsevalIdentity) {
        value = lattice_sum_parseval(f.fhat, psi, ts, j, grid);
      } else {
        const DirectLatticeSum d = lattice_sum_direct_detail(f.fhat, psi, ts, j, options.M, grid);
        value = d.total;
        coset_tail.add(d.tail_estimate);
      }
      rep.levels.push_back({l + 1, j, value});
      total.add(value);
    }
  }
  rep.total = total.value();
  rep.coset_tail = coset_tail.value();
  rep.signal_norm_sq = norm_sq(f.fhat, f.a, f.b, options.grid_log2);
  rep.ratio = rep.signal_norm_sq > 0.0 ? rep.total / rep.signal_norm_sq : 0.0;

  const Rational zero(0);
  if (f.a < zero) {
    rep.negative_mass = norm_sq(f.fhat, f.a, std::min(f.b, zero), options.grid_log2);
    if (rep.negative_mass > 0.0) {
      rep.warnings.push_back("negative-frequency mass " + sci(rep.negative_mass) +
                             " lies outside every generator support and is not analysed");
    }
  }

  // Dilation coverage: level j reaches fhat on (2N)^j * supp(psi_l).
  SupportBound hull = SupportBound::none();
  for (const auto& psi : generators) {
    hull = hull.hull(support_bound(psi).intersect(SupportBound::interval(grid.a(), grid.b())));
  }
  const Rational pos_lo = std::max(f.a, zero);
  if (pos_lo < f.b) {
    CompensatedSum tail;
    if (hull.empty) {
      tail.add(norm_sq(f.fhat, pos_lo, f.b, options.grid_log2));
    } else {
      const Rational dil(ts.dilation());
      const Rational cover_lo = *hull.lo * Rational::pow(dil, options.j_min);
      const Rational cover_hi = *hull.hi * Rational::pow(dil, options.j_max);
      if (pos_lo < cover_lo) {
        tail.add(norm_sq(f.fhat, pos_lo, std::min(f.b, cover_lo), options.grid_log2));
      }
      if (cover_hi < f.b) {
        tail.add(norm_sq(f.fhat, std::max(pos_lo, cover_hi), f.b, options.grid_log2));
      }
    }
    rep.j_tail = tail.value();
    if (rep.j_tail > 0.0) {
      rep.warnings.push_back("j-truncation: mass " + sci(rep.j_tail) + " outside levels [" +
                             std::to_string(options.j_min) + ", " +
                             std::to_string(options.j_max) + "]");
    }
  }
  if (options.route == Route::DirectOracle && rep.coset_tail > 0.0) {
    rep.warnings.push_back("coset truncation: estimated tail " + sci(rep.coset_tail) +
                           " beyond M = " + std::to_string(options.M));
  }
  if (rep.signal_norm_sq == 0.0) rep.warnings.push_back("signal has zero norm");
  return rep;
}

}  // namespace nuframe
