#include <gtest/gtest.h>

#include "stochorder/rational.hpp"

using namespace stochorder;

TEST(ParseRational, Forms) {
  EXPECT_EQ(parse_rational("5/2"), Rational(5, 2));
  EXPECT_EQ(parse_rational(" -3 "), Rational(-3));
  EXPECT_EQ(parse_rational("0.975"), Rational(39, 40));
  EXPECT_EQ(parse_rational("1e-1"), Rational(1, 10));
  EXPECT_EQ(parse_rational("-2.5E2"), Rational(-250));
  EXPECT_EQ(parse_rational(".5"), Rational(1, 2));
}

TEST(ParseRational, LeadingZerosAreDecimal) {
  EXPECT_EQ(parse_rational("010"), Rational(10));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("0.0975"), Rational(39, 400));
  EXPECT_EQ(parse_rational("007/009"), Rational(7, 9));
  EXPECT_EQ(parse_rational("0.000"), Rational(0));
}

TEST(ParseRational, Rejects) {
  for (const char* s : {"", "abc", "1/0", "1.2.3", "e5", "1e", "--1", "0x10", "nan", "inf"}) {
    EXPECT_THROW(parse_rational(s), InputError) << s;
  }
}

TEST(ToString, Canonical) {
  EXPECT_EQ(to_string(Rational(10, 4)), "5/2");
  EXPECT_EQ(to_string(Rational(-6, 3)), "-2");
  EXPECT_EQ(to_string(Rational(0)), "0");
}

TEST(FromDouble, Exact) {
  EXPECT_EQ(rational_from_double(0.5), Rational(1, 2));
  EXPECT_EQ(to_double(rational_from_double(0.1)), 0.1);
  EXPECT_THROW(rational_from_double(std::nan("")), InputError);
}
