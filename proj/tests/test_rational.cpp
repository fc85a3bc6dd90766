#include "sponge/errors.hpp"
#include "sponge/rational.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace sponge;

TEST(Rational, PowersAndInversePowers) {
  EXPECT_EQ(pow_int(BigInt(3), 5), BigInt(243));
  EXPECT_EQ(pow_int(BigInt(7), 0), BigInt(1));
  EXPECT_EQ(inverse_power(4, 3), Rational(BigInt(1), BigInt(64)));
  EXPECT_EQ(pow_rational(Rational(BigInt(2), BigInt(3)), 3), Rational(BigInt(8), BigInt(27)));
}

TEST(Rational, LogarithmsBeyondDoubleRange) {
  const BigInt huge = pow_int(BigInt(10), 400);
  EXPECT_NEAR(log_bigint(huge), 400 * std::log(10.0), 1e-9);
  EXPECT_NEAR(log_rational(inverse_power(2, 2000)), -2000 * std::log(2.0), 1e-9);
  EXPECT_THROW(log_bigint(BigInt(0)), SpongeError);
}

TEST(Rational, TextRoundTrip) {
  EXPECT_EQ(to_string(Rational(BigInt(6), BigInt(8))), "3/4");
  EXPECT_EQ(to_string(Rational(5)), "5/1");
  EXPECT_EQ(parse_rational("3/4"), Rational(BigInt(3), BigInt(4)));
  EXPECT_EQ(parse_rational(" -10 / 4 "), Rational(BigInt(-5), BigInt(2)));
  EXPECT_EQ(parse_rational("7"), Rational(7));
  EXPECT_EQ(parse_rational("010/08"), Rational(BigInt(5), BigInt(4)));
  EXPECT_EQ(parse_scale("0.0625").value, inverse_power(2, 4));
  for (const char* bad : {"", "1/0", "a/2", "1.5/2", "/3"}) {
    EXPECT_THROW(parse_rational(bad), SpongeError) << bad;
  }
}

TEST(Rational, LimitDenominatorFindsBestApproximation) {
  const Rational pi = parse_scale("3.14159265358979").value;
  EXPECT_EQ(limit_denominator(pi, BigInt(1000)), Rational(BigInt(355), BigInt(113)));
  EXPECT_EQ(limit_denominator(pi, BigInt(10)), Rational(BigInt(22), BigInt(7)));
  const Rational third(BigInt(1), BigInt(3));
  EXPECT_EQ(limit_denominator(third, BigInt(5)), third);
}

TEST(Rational, ScalesFromDecimalsAreExactWhenPossible) {
  ParsedScale a = parse_scale("0.25");
  EXPECT_TRUE(a.from_decimal);
  EXPECT_FALSE(a.approximated);
  EXPECT_EQ(a.value, Rational(BigInt(1), BigInt(4)));

  ParsedScale b = parse_scale("1e-3");
  EXPECT_EQ(b.value, Rational(BigInt(1), BigInt(1000)));

  ParsedScale c = parse_scale("1/16");
  EXPECT_FALSE(c.from_decimal);
  EXPECT_EQ(c.value, inverse_power(4, 2));

  ParsedScale d = parse_scale("0.3333333333333333");
  EXPECT_TRUE(d.approximated);
  EXPECT_EQ(d.value, Rational(BigInt(1), BigInt(3)));

  EXPECT_THROW(parse_scale("0.2.5"), SpongeError);
  EXPECT_THROW(parse_scale("abc"), SpongeError);
}
