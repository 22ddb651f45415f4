#include <gtest/gtest.h>

#include <limits>
#include <random>

#include "symparab/errors.hpp"
#include "symparab/rational.hpp"

using symparab::Rational;

TEST(Rational, NormalizesSignAndGcd) {
  Rational r(6, -4);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(Rational(0, 5), Rational(0));
  EXPECT_TRUE(Rational(4, 2).is_integer());
}

TEST(Rational, ZeroDenominatorThrows) {
  EXPECT_THROW(Rational(1, 0), symparab::DivisionByZero);
  EXPECT_THROW(Rational(3) / Rational(0), symparab::DivisionByZero);
  EXPECT_THROW(Rational(0).inverse(), symparab::DivisionByZero);
}

TEST(Rational, PromotesAndDemotesAcrossInt64) {
  const std::int64_t big = std::numeric_limits<std::int64_t>::max();
  Rational a(big);
  Rational sq = a * a;
  EXPECT_FALSE(sq.is_small());
  Rational back = sq / a;
  EXPECT_TRUE(back.is_small());
  EXPECT_EQ(back, a);
  EXPECT_EQ((sq - sq), Rational(0));
  Rational m(std::numeric_limits<std::int64_t>::min());
  EXPECT_EQ(-(-m), m);
  EXPECT_FALSE((-m).is_small());
}

TEST(Rational, ParseAndCompare) {
  EXPECT_EQ(Rational::parse("-10/4"), Rational(-5, 2));
  EXPECT_EQ(Rational::parse("123456789012345678901234567890").str(), "123456789012345678901234567890");
  EXPECT_THROW(Rational::parse("1/x"), symparab::ParseError);
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_GT(Rational::parse("100000000000000000000"), Rational(7));
}

TEST(Rational, AddMulMatchesSeparateOps) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> d(-(1LL << 40), 1LL << 40);
  for (int i = 0; i < 2000; ++i) {
    Rational acc(d(rng), d(rng) | 1);
    Rational a(d(rng), (d(rng) & 0xffff) + 1);
    Rational b(d(rng), (d(rng) & 0xffffff) + 1);
    Rational expect = acc + a * b;
    acc.add_mul(a, b);
    ASSERT_EQ(acc, expect);
    ASSERT_EQ(acc.hash(), expect.hash());
  }
}
