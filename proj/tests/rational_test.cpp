#include <cstdint>
#include <limits>

#include <gtest/gtest.h>

#include "nuframe/errors.hpp"
#include "nuframe/rational.hpp"

using nuframe::Error;
using nuframe::ErrorCode;
using nuframe::Rational;

TEST(Rational, LowestTerms) {
  const Rational q(6, -8);
  EXPECT_EQ(q.num(), -3);
  EXPECT_EQ(q.den(), 4);
  EXPECT_EQ(q.str(), "-3/4");
  EXPECT_EQ(Rational(10, 5).str(), "2");
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
  EXPECT_EQ(Rational(1, 3) - Rational(1, 2), Rational(-1, 6));
  EXPECT_EQ(Rational(3, 4) * Rational(2, 9), Rational(1, 6));
  EXPECT_EQ(Rational(3, 4) / Rational(3, 8), Rational(2));
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_EQ(Rational(-7, 2).floor(), -4);
  EXPECT_EQ(Rational(7, 2).floor(), 3);
}

TEST(Rational, Pow) {
  EXPECT_EQ(Rational::pow(Rational(4), 3), Rational(64));
  EXPECT_EQ(Rational::pow(Rational(4), -2), Rational(1, 16));
  EXPECT_EQ(Rational::pow(Rational(2, 3), 0), Rational(1));
}

TEST(Rational, Parse) {
  EXPECT_EQ(Rational::parse("7"), Rational(7));
  EXPECT_EQ(Rational::parse("-3/4"), Rational(-3, 4));
  EXPECT_EQ(Rational::parse("0.125"), Rational(1, 8));
  EXPECT_THROW(Rational::parse("1/0"), Error);
  EXPECT_THROW(Rational::parse("abc"), Error);
}

TEST(Rational, OverflowIsReported) {
  const Rational big(std::numeric_limits<std::int64_t>::max());
  try {
    (void)(big + Rational(1));
    FAIL() << "expected overflow";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Overflow);
  }
  EXPECT_THROW(Rational::pow(Rational(4), 40), Error);
}

TEST(Rational, ToDouble) {
  EXPECT_DOUBLE_EQ(Rational(1, 3).to_double(), 1.0 / 3.0);
  EXPECT_EQ(Rational(3, 2).to_double(), 1.5);
}
