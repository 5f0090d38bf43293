#include "ptakkit/rational.hpp"
#include "ptakkit/rng.hpp"

#include <gtest/gtest.h>

#include <set>

using ptakkit::fraction;
using ptakkit::parse_rational;
using ptakkit::Rational;
using ptakkit::to_string;

TEST(Rational, SerializesAsFraction) {
  EXPECT_EQ(to_string(Rational(1)), "1/1");
  EXPECT_EQ(to_string(Rational(0)), "0/1");
  EXPECT_EQ(to_string(fraction(4, 10)), "2/5");
  EXPECT_EQ(to_string(fraction(3, -6)), "-1/2");
}

TEST(Rational, ParsesAllAcceptedForms) {
  EXPECT_EQ(parse_rational("2/5"), fraction(2, 5));
  EXPECT_EQ(parse_rational("-6/4"), fraction(-3, 2));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("0.25"), fraction(1, 4));
  EXPECT_EQ(parse_rational("1e-6"), fraction(1, 1000000));
  EXPECT_EQ(parse_rational("2.5E2"), Rational(250));
  EXPECT_EQ(parse_rational("-0.5"), fraction(-1, 2));
  EXPECT_EQ(parse_rational(" 3/4 "), fraction(3, 4));
}

TEST(Rational, RejectsMalformedText) {
  for (const char* bad : {"", "/", "1/", "/2", "1/0", "abc", "1.2.3", "1e", "--1", "1/2/3", "1 2"}) {
    EXPECT_THROW(parse_rational(bad), std::invalid_argument) << bad;
  }
}

TEST(Rational, RoundTripsRandomFractions) {
  ptakkit::Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    Rational r = fraction(rng.between(-1000000, 1000000), rng.between(1, 1000000));
    EXPECT_EQ(parse_rational(to_string(r)), r);
  }
}

TEST(Rational, CeilAndAbs) {
  EXPECT_EQ(ptakkit::ceil(fraction(12, 5)), 3);
  EXPECT_EQ(ptakkit::ceil(Rational(2)), 2);
  EXPECT_EQ(ptakkit::ceil(fraction(-5, 2)), -2);
  EXPECT_EQ(ptakkit::abs(fraction(-3, 7)), fraction(3, 7));
}

TEST(Rng, IsDeterministicPerSeed) {
  ptakkit::Rng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    auto x = a.next();
    EXPECT_EQ(x, b.next());
    differs |= x != c.next();
  }
  EXPECT_TRUE(differs);
}

TEST(Rng, BoundedDrawsStayInRange) {
  ptakkit::Rng rng(5);
  std::set<std::int64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    auto v = rng.between(-3, 3);
    ASSERT_GE(v, -3);
    ASSERT_LE(v, 3);
    seen.insert(v);
  }
  EXPECT_EQ(seen.size(), 7u);
  EXPECT_THROW(rng.below(0), std::invalid_argument);
  EXPECT_THROW(rng.between(2, 1), std::invalid_argument);
}
