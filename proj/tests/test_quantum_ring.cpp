#include "hilbgw/quantum_ring.hpp"
#include "hilbgw/targets.hpp"

#include <gtest/gtest.h>

using namespace hilbgw;

namespace {

Engine& shared() {
  static Engine e(hilb2_datum());
  return e;
}

CohVector T(int i) { return CohVector::basis(9, i); }

}  // namespace

TEST(FSeries, Expansion) {
  EXPECT_TRUE(f_series(0).is_zero());
  const ScalarSeries f = f_series(3);
  EXPECT_EQ(f.at(0, 0), 0);
  for (int a = 1; a <= 3; ++a) EXPECT_EQ(f.at(a, 0), 1);
  for (int n = 0; n <= 6; ++n) {
    const ScalarSeries one = ScalarSeries::constant(1, n, 1);
    const ScalarSeries lhs = (one - ScalarSeries::monomial(1, 0, 1, n, 1)) * f_series(n, 1);
    EXPECT_EQ(lhs, ScalarSeries::monomial(1, 0, 1, n, 1)) << "n=" << n;
  }
}

TEST(QuantumProduct, T1T3) {
  QuantumRing R(shared(), 4, 2);
  const QSeries p = R.product(T(1), T(3));
  EXPECT_EQ(p.at(0, 0), CohVector(9));
  for (int a = 1; a <= 4; ++a) EXPECT_EQ(p.at(a, 0), Rational(3) * T(7)) << "q1^" << a;
  EXPECT_EQ(p.at(1, 1), T(0));
  EXPECT_EQ(p.at(2, 1), Rational(2) * T(0));
  EXPECT_TRUE(p.at(3, 1).is_zero());
  EXPECT_TRUE(p.at(0, 1).is_zero());
  EXPECT_TRUE(p.at(1, 2).is_zero());
}

TEST(QuantumProduct, T2T5) {
  QuantumRing R(shared(), 4, 2);
  const QSeries p = R.product(T(2), T(5));
  EXPECT_EQ(p.at(0, 0), T(6) + Rational(2) * T(7));
  EXPECT_EQ(p.at(0, 1), T(0));
  EXPECT_EQ(p.at(1, 1), T(0));
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 2; ++b)
      if (!((a == 0 && b <= 1) || (a == 1 && b == 1))) EXPECT_TRUE(p.at(a, b).is_zero()) << a << "," << b;
}

TEST(QuantumProduct, ClassicalPartIsCup) {
  QuantumRing R(shared(), 2, 1);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) EXPECT_EQ(R.product(T(i), T(j)).at(0, 0), cup(hilb2_datum(), i, j));
}

TEST(QuantumProduct, Unit) {
  QuantumRing R(shared(), 3, 2);
  for (int i = 0; i < 9; ++i) EXPECT_EQ(R.product(T(0), T(i)), times(R.scalar(1), T(i)));
}

TEST(QuantumProduct, CommutativeAndAssociative) {
  QuantumRing R(shared(), 3, 2);
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      EXPECT_EQ(R.product(T(i), T(j)), R.product(T(j), T(i)));
      for (int k = 0; k < 9; ++k) {
        const QSeries left = R.product(R.product(T(i), T(j)), T(k));
        const QSeries jk = R.product(T(j), T(k));
        // T_i * (T_j * T_k), expanded over the coefficients of T_j * T_k.
        QSeries right(9, 3, 2);
        for (int a = 0; a <= 3; ++a)
          for (int b = 0; b <= 2; ++b)
            if (!jk.at(a, b).is_zero()) right += R.q(a, b) * R.product(T(i), jk.at(a, b));
        EXPECT_EQ(left, right) << i << "," << j << "," << k;
      }
    }
}

TEST(QuantumProduct, ProductTable) {
  for (auto [n1, n2] : {std::pair{4, 2}, std::pair{5, 2}}) {
    const ProductReport r = verify_product_table(shared(), n1, n2);
    ASSERT_EQ(r.entries.size(), 9u);
    for (const auto& e : r.entries) EXPECT_TRUE(e.pass) << e.name << ": " << e.first_mismatch;
  }
}

TEST(QuantumProduct, ReportsFirstDifference) {
  QuantumRing R(shared(), 2, 1);
  const QSeries a = times(R.scalar(1), T(3));
  const QSeries b = a + times(R.q(1, 1), T(0));
  EXPECT_EQ(first_difference(a, a), "");
  EXPECT_EQ(first_difference(a, b), "q1^1 q2^1: expected 0, got T0");
}

TEST(QuantumRelations, VanishAtTruncation) {
  for (const auto& r : verify_relations(shared(), 4, 2)) EXPECT_TRUE(r.pass) << r.name << ": " << r.residual.str();
}

TEST(QuantumRelations, ClassicalLimit) {
  const TargetDatum& X = hilb2_datum();
  const CohVector t222 = cup(X, cup(X, 2, 2), T(2));
  const CohVector t122 = cup(X, cup(X, 1, 2), T(2));
  const CohVector t112 = cup(X, cup(X, 1, 1), T(2));
  EXPECT_TRUE((t222 - Rational(3) * t122 + Rational(6) * t112).is_zero());
  EXPECT_TRUE(cup(X, cup(X, 1, 1), T(1)).is_zero());
  for (const auto& r : verify_relations(shared(), 0, 0)) EXPECT_TRUE(r.pass) << r.name;
}
