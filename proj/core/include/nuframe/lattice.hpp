#pragma once

#include <cstdint>
#include <vector>

#include "nuframe/rational.hpp"

namespace nuframe {

/// The nonuniform translation set {0, r/N} + 2Z paired with dilation 2N.
///
/// Construction enforces N >= 1, r odd, gcd(r, N) = 1 and 1 <= r <= 2N - 1,
/// so the two cosets 2Z and r/N + 2Z never intersect. Elements are exact
/// rationals; callers convert to floating point only inside kernels.
class TranslationSet {
 public:
  static TranslationSet create(std::int64_t N, std::int64_t r);

  std::int64_t N() const noexcept { return N_; }
  std::int64_t r() const noexcept { return r_; }
  std::int64_t dilation() const noexcept { return 2 * N_; }
  Rational offset() const { return Rational(r_, N_); }

  /// {2m} and {r/N + 2m} for m in [m_min, m_max], ascending.
  std::vector<Rational> enumerate(std::int64_t m_min, std::int64_t m_max) const;

  bool contains(const Rational& x) const;

  /// Closed under addition exactly when N = 1 (then the set is Z).
  bool is_group() const noexcept { return N_ == 1; }

  friend bool operator==(const TranslationSet&, const TranslationSet&) = default;

 private:
  TranslationSet(std::int64_t N, std::int64_t r) : N_(N), r_(r) {}

  std::int64_t N_;
  std::int64_t r_;
};

}  // namespace nuframe
