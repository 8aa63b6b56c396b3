#include "hilbgw/linear_system.hpp"
#include "hilbgw/rational.hpp"

#include <gtest/gtest.h>

using namespace hilbgw;

TEST(SparseExactSystem, SolvesIncrementally) {
  SparseExactSystem s;
  const int x = s.add_column();
  const int y = s.add_column();
  const int z = s.add_column();
  // x + y - 3 = 0
  s.add_equation({{x, 1}, {y, 1}}, -3);
  EXPECT_FALSE(s.determined(x));
  // x - y - 1 = 0
  s.add_equation({{x, 1}, {y, -1}}, -1);
  EXPECT_EQ(*s.value(x), 2);
  EXPECT_EQ(*s.value(y), 1);
  EXPECT_FALSE(s.value(z).has_value());
  // 2z - x = 0 -> z = 1
  s.add_equation({{x, -1}, {z, 2}}, 0);
  EXPECT_EQ(*s.value(z), 1);
  EXPECT_EQ(s.rank(), 3u);
}

TEST(SparseExactSystem, ExactFractions) {
  SparseExactSystem s;
  const int x = s.add_column();
  s.add_equation({{x, 3}}, 1);
  EXPECT_EQ(*s.value(x), Rational(-1, 3));
}

TEST(SparseExactSystem, RedundantAndInconsistent) {
  SparseExactSystem s;
  const int x = s.add_column();
  const int y = s.add_column();
  s.add_equation({{x, 1}, {y, 2}}, -4);
  EXPECT_NO_THROW(s.add_equation({{x, 2}, {y, 4}}, -8));
  EXPECT_EQ(s.rank(), 1u);
  EXPECT_THROW(s.add_equation({{x, 2}, {y, 4}}, -7), InconsistentSystem);
}

TEST(SparseExactSystem, ColumnsAddedLater) {
  SparseExactSystem s;
  const int x = s.add_column();
  s.add_equation({{x, 1}}, -5);
  const int y = s.add_column();
  s.add_equation({{x, 1}, {y, 1}}, 0);
  EXPECT_EQ(*s.value(y), -5);
}

TEST(Rational, ParseStrict) {
  EXPECT_EQ(parse_rational("3"), 3);
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1.5"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/-2"), std::invalid_argument);
  EXPECT_THROW(parse_rational(" 1"), std::invalid_argument);
}

TEST(Rational, Binomial) {
  EXPECT_EQ(binomial(6, 1), 6);
  EXPECT_EQ(binomial(16, 8), 12870);
  EXPECT_EQ(binomial(5, -1), 0);
  EXPECT_EQ(binomial(5, 6), 0);
  EXPECT_EQ(binomial(-1, 0), 0);
  // Pascal's rule as an independent check.
  for (long n = 1; n < 30; ++n)
    for (long k = 1; k < n; ++k) EXPECT_EQ(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
}
