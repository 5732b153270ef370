#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace nuframe {

/// Exact rational p/q with 64-bit parts, always stored in lowest terms with
/// q > 0. Arithmetic that would leave the 64-bit range throws
/// Error(Overflow) instead of wrapping.
class Rational {
 public:
  constexpr Rational() noexcept = default;
  Rational(std::int64_t num) : num_(num) {}  // NOLINT(implicit)
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  bool is_zero() const noexcept { return num_ == 0; }
  bool is_integer() const noexcept { return den_ == 1; }
  int sign() const noexcept { return (num_ > 0) - (num_ < 0); }

  double to_double() const noexcept;

  /// "p" for integers, "p/q" otherwise.
  std::string str() const;

  /// Accepts "7", "-7", "3/4", "-3/4", "0.125". Whitespace is not allowed.
  static Rational parse(std::string_view text);

  /// base^exp for integer exp of either sign; base must be nonzero when
  /// exp < 0.
  static Rational pow(const Rational& base, int exp);

  Rational operator-() const;
  Rational abs() const { return num_ < 0 ? -*this : *this; }
  Rational reciprocal() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a,
                                          const Rational& b) noexcept;

  /// Largest integer not above the value.
  std::int64_t floor() const noexcept;

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace nuframe
