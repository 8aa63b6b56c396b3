#include "hilbgw/hyperelliptic.hpp"
#include "hilbgw/oracles.hpp"

#include <gtest/gtest.h>

using namespace hilbgw;

TEST(Kontsevich, PublishedValues) {
  EXPECT_EQ(kontsevich_nd(1), 1);
  EXPECT_EQ(kontsevich_nd(2), 1);
  EXPECT_EQ(kontsevich_nd(3), 12);
  EXPECT_EQ(kontsevich_nd(4), 620);
  EXPECT_EQ(kontsevich_nd(5), 87304);
  EXPECT_EQ(kontsevich_nd(6), 26312976);
  EXPECT_EQ(kontsevich_nd(7), Integer("14616808192"));
  EXPECT_THROW(kontsevich_nd(0), std::invalid_argument);
}

TEST(Kontsevich, EngineOnP2Agrees) {
  for (int d = 1; d <= 6; ++d) EXPECT_EQ(engine_nd(d), Rational(kontsevich_nd(d))) << "d=" << d;
}

TEST(Kontsevich, EngineNeedsP2) {
  Engine h(hilb2_datum());
  EXPECT_THROW(engine_nd(h, 3), std::invalid_argument);
  EXPECT_THROW(engine_nd(0), std::invalid_argument);
}

TEST(Kontsevich, SeveriGenusZeroAgrees) {
  Engine h(hilb2_datum());
  for (int d = 2; d <= 5; ++d) EXPECT_EQ(severi_degree(h, 0, d), Rational(kontsevich_nd(d))) << "d=" << d;
}
