#include "nuframe/lattice.hpp"

#include <numeric>
#include <string>

#include "nuframe/errors.hpp"

namespace nuframe {

TranslationSet TranslationSet::create(std::int64_t N, std::int64_t r) {
  if (N < 1) {
    throw Error(ErrorCode::RejectNonPositiveN, "N = " + std::to_string(N));
  }
  if (r < 1 || r > 2 * N - 1) {
    throw Error(ErrorCode::RejectRange,
                "r = " + std::to_string(r) + " outside [1, " +
                    std::to_string(2 * N - 1) + "]");
  }
  if (r % 2 == 0) {
    throw Error(ErrorCode::RejectEvenR, "r = " + std::to_string(r));
  }
  if (std::gcd(r, N) != 1) {
    throw Error(ErrorCode::RejectNotCoprime,
                "gcd(" + std::to_string(r) + ", " + std::to_string(N) + ") != 1");
  }
  return TranslationSet(N, r);
}

std::vector<Rational> TranslationSet::enumerate(std::int64_t m_min,
                                                std::int64_t m_max) const {
  if (m_min > m_max) {
    throw Error(ErrorCode::InvalidArgument, "enumerate requires m_min <= m_max");
  }
  // r/N lies in (0, 2), so 2m < r/N + 2m < 2(m+1) and interleaving the
  // cosets per m already yields ascending order.
  const Rational off = offset();
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(2 * (m_max - m_min + 1)));
  for (std::int64_t m = m_min; m <= m_max; ++m) {
    out.emplace_back(2 * m);
    out.push_back(off + Rational(2 * m));
  }
  return out;
}

bool TranslationSet::contains(const Rational& x) const {
  auto in_even = [](const Rational& v) { return v.is_integer() && v.num() % 2 == 0; };
  return in_even(x) || in_even(x - offset());
}

}  // namespace nuframe
