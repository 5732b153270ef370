#pragma once

#include <cstddef>

#include "nuframe/rational.hpp"

namespace nuframe {

/// Uniform midpoint sampling of [a, b] with 2^log2_n cells:
/// g_k = a + (k + 1/2) h, h = (b - a) / 2^log2_n.
class FrequencyGrid {
 public:
  static constexpr int kMinLog2 = 10;
  static constexpr int kMaxLog2 = 26;

  FrequencyGrid(Rational a, Rational b, int log2_n);

  const Rational& a() const noexcept { return a_; }
  const Rational& b() const noexcept { return b_; }
  int log2_n() const noexcept { return log2_n_; }
  std::size_t size() const noexcept { return std::size_t{1} << log2_n_; }
  double step() const noexcept { return h_; }
  double point(std::size_t k) const noexcept {
    return a_d_ + (static_cast<double>(k) + 0.5) * h_;
  }

 private:
  Rational a_;
  Rational b_;
  int log2_n_;
  double a_d_;
  double h_;
};

}  // namespace nuframe
