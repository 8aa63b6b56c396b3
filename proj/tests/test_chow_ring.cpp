#include "hilbgw/targets.hpp"

#include "poly_oracle.hpp"

#include <gtest/gtest.h>

#include <map>

using namespace hilbgw;
using namespace poly_oracle;

namespace {

const TargetDatum& H() { return hilb2_datum(); }
CohVector T(int i) { return CohVector::basis(9, i); }

CohVector vec(std::initializer_list<std::pair<int, int>> terms) {
  CohVector v(9);
  for (auto [i, c] : terms) v[static_cast<std::size_t>(i)] += c;
  return v;
}

}  // namespace

TEST(ChowRing, CupExamples) {
  EXPECT_EQ(cup(H(), 1, 2), vec({{3, 2}, {4, 1}}));
  EXPECT_TRUE(cup(H(), cup(H(), 1, 1), T(1)).is_zero());
  EXPECT_EQ(cup(H(), 2, 2), vec({{3, 1}, {4, 1}, {5, 1}}));
  EXPECT_EQ(cup(H(), 4, 4), T(8));
  EXPECT_EQ(cup(H(), 1, 5), vec({{6, 2}, {7, 1}}));
  EXPECT_EQ(cup(H(), 2, 3), T(6));
  EXPECT_EQ(cup(H(), 3, 5), T(8));
}

TEST(ChowRing, CupTableMatchesMonomialOracle) {
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      const CohVector c = cup(H(), i, j);
      for (int k = 0; k < 9; ++k)
        EXPECT_EQ(c[static_cast<std::size_t>(k)], Rational(triple(i, j, 8 - k))) << "T" << i << "*T" << j << " on T" << k;
    }
}

TEST(ChowRing, OracleGramMatrixIsDualPairing) {
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) EXPECT_EQ(integral(mul(basis(i), basis(j))), i + j == 8 ? 1 : 0);
}

TEST(ChowRing, CommutativeAndAssociative) {
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      EXPECT_EQ(cup(H(), i, j), cup(H(), j, i));
      for (int k = 0; k < 9; ++k) EXPECT_EQ(cup(H(), cup(H(), i, j), T(k)), cup(H(), T(i), cup(H(), j, k)));
    }
}

TEST(ChowRing, CupRespectsGrading) {
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) EXPECT_TRUE(is_pure(H(), cup(H(), i, j), H().codim[i] + H().codim[j]));
}

TEST(ChowRing, DualIndex) {
  EXPECT_EQ(dual_index(H(), 4), 4);
  EXPECT_EQ(dual_index(H(), 0), 8);
  EXPECT_EQ(dual_index(H(), 1), 7);
  EXPECT_EQ(triple(0, 1, 7), 1);
}

TEST(ChowRing, Integrate) {
  EXPECT_EQ(integrate(H(), T(8)), 1);
  EXPECT_EQ(integrate(H(), cup(H(), 3, 4)), 0);
  EXPECT_EQ(integrate(H(), cup(H(), cup(H(), 1, 1), cup(H(), 2, 2))), 1);
  EXPECT_EQ(integrate(H(), cup(H(), 4, 4)), 1);
  EXPECT_EQ(integrate(H(), T(7)), 0);
}

TEST(ChowRing, Decompose) {
  const auto& d3 = decompose(H(), 3);
  ASSERT_EQ(d3.size(), 1u);
  EXPECT_EQ(d3[0].divisor, 1);
  EXPECT_EQ(d3[0].lower, 1);
  EXPECT_EQ(d3[0].coeff, 1);

  const auto& d4 = decompose(H(), 4);
  ASSERT_EQ(d4.size(), 2u);
  std::map<std::pair<int, int>, Rational> terms;
  for (const auto& t : d4) terms[{t.divisor, t.lower}] = t.coeff;
  EXPECT_EQ((terms[{1, 2}]), 1);
  EXPECT_EQ((terms[{1, 1}]), -2);

  const auto& d8 = decompose(H(), 8);
  ASSERT_EQ(d8.size(), 1u);
  EXPECT_EQ(d8[0].divisor, 1);
  EXPECT_EQ(d8[0].lower, 7);
  EXPECT_EQ(d8[0].coeff, 1);

  EXPECT_THROW(decompose(H(), 1), std::invalid_argument);
}

TEST(ChowRing, DecompositionsReproduceBasis) {
  for (int m = 3; m < 9; ++m) {
    CohVector sum(9);
    for (const auto& t : decompose(H(), m)) {
      EXPECT_EQ(H().codim[t.divisor], 1);
      EXPECT_EQ(H().codim[t.lower], H().codim[m] - 1);
      CohVector c = cup(H(), t.divisor, t.lower);
      c *= t.coeff;
      sum += c;
    }
    EXPECT_EQ(sum, T(m)) << "T" << m;
  }
}

TEST(ChowRing, ClassPairings) {
  const CurveClass b{1, 4};
  EXPECT_EQ(H().pairing(1, b), 1);
  EXPECT_EQ(H().pairing(2, b), 4);
  EXPECT_EQ(H().anticanonical_degree(b), 12);
  // The diagonal class 2(T2 - T1) meets (d-g-1, d) in 2g + 2.
  EXPECT_EQ(2 * (H().pairing(2, b) - H().pairing(1, b)), 6);
  EXPECT_EQ(H().required_weight({0, 1}), 4);
}

TEST(ChowRing, S5IsT5PlusT3) { EXPECT_EQ(hilb2_s5(), vec({{5, 1}, {3, 1}})); }

TEST(ChowRing, P2Datum) {
  const TargetDatum& P = p2_datum();
  ASSERT_EQ(P.size(), 3u);
  EXPECT_EQ(cup(P, 1, 1), CohVector::basis(3, 2));
  EXPECT_TRUE(cup(P, 1, 2).is_zero());
  EXPECT_EQ(dual_index(P, 0), 2);
  EXPECT_EQ(P.anticanonical_degree({4, 0}), 12);
  EXPECT_FALSE(P.effective({0, 1}));
  EXPECT_NO_THROW(validate(P));
}

TEST(ChowRing, CohVectorFormatting) {
  EXPECT_EQ(vec({{3, 2}, {4, 1}}).str(), "2T3 + T4");
  EXPECT_EQ(CohVector(9).str(), "0");
}
