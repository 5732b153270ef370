#include "nuframe/rational.hpp"

#include <cctype>
#include <limits>

#include "nuframe/errors.hpp"

namespace nuframe {

namespace {

__int128 gcd_wide(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits(__int128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Rational Rational::from_wide(__int128 num, __int128 den) {
  if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const __int128 g = gcd_wide(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  if (!fits(num) || !fits(den)) {
    throw Error(ErrorCode::Overflow, "rational exceeds 64-bit range");
  }
  Rational r;
  r.num_ = static_cast<std::int64_t>(num);
  r.den_ = static_cast<std::int64_t>(den);
  return r;
}

Rational::Rational(std::int64_t num, std::int64_t den) {
  *this = from_wide(num, den);
}

double Rational::to_double() const noexcept {
  // Both parts are exact in the 64-bit long double mantissa.
  return static_cast<double>(static_cast<long double>(num_) /
                             static_cast<long double>(den_));
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational Rational::parse(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  auto read_digits = [&](__int128& value, int& count) {
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      value = value * 10 + (text[pos] - '0');
      if (value > std::numeric_limits<std::int64_t>::max()) {
        throw Error(ErrorCode::Overflow, "numeric literal out of range");
      }
      ++count;
      ++pos;
    }
  };
  __int128 num = 0;
  __int128 den = 1;
  int int_digits = 0;
  read_digits(num, int_digits);
  if (int_digits == 0) {
    throw Error(ErrorCode::InvalidArgument,
                "malformed rational '" + std::string(text) + "'");
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    int frac_digits = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      num = num * 10 + (text[pos] - '0');
      den *= 10;
      if (num > std::numeric_limits<std::int64_t>::max() ||
          den > std::numeric_limits<std::int64_t>::max()) {
        throw Error(ErrorCode::Overflow, "numeric literal out of range");
      }
      ++frac_digits;
      ++pos;
    }
    if (frac_digits == 0) {
      throw Error(ErrorCode::InvalidArgument,
                  "malformed rational '" + std::string(text) + "'");
    }
  } else if (pos < text.size() && text[pos] == '/') {
    ++pos;
    __int128 d = 0;
    int den_digits = 0;
    read_digits(d, den_digits);
    if (den_digits == 0 || d == 0) {
      throw Error(ErrorCode::InvalidArgument,
                  "malformed rational '" + std::string(text) + "'");
    }
    den = d;
  }
  if (pos != text.size()) {
    throw Error(ErrorCode::InvalidArgument,
                "malformed rational '" + std::string(text) + "'");
  }
  return from_wide(negative ? -num : num, den);
}

Rational Rational::pow(const Rational& base, int exp) {
  if (exp < 0) return pow(base.reciprocal(), -exp);
  Rational result(1);
  Rational b = base;
  while (exp > 0) {
    if (exp & 1) result *= b;
    exp >>= 1;
    if (exp > 0) b *= b;
  }
  return result;
}

Rational Rational::operator-() const { return from_wide(-static_cast<__int128>(num_), den_); }

Rational Rational::reciprocal() const {
  if (num_ == 0) throw Error(ErrorCode::InvalidArgument, "reciprocal of zero");
  return from_wide(den_, num_);
}

Rational operator+(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ +
                                 static_cast<__int128>(b.num_) * a.den_,
                             static_cast<__int128>(a.den_) * b.den_);
}

Rational operator-(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_ -
                                 static_cast<__int128>(b.num_) * a.den_,
                             static_cast<__int128>(a.den_) * b.den_);
}

Rational operator*(const Rational& a, const Rational& b) {
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.num_,
                             static_cast<__int128>(a.den_) * b.den_);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw Error(ErrorCode::InvalidArgument, "division by zero");
  return Rational::from_wide(static_cast<__int128>(a.num_) * b.den_,
                             static_cast<__int128>(a.den_) * b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) noexcept {
  const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
  const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::int64_t Rational::floor() const noexcept {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

}  // namespace nuframe
