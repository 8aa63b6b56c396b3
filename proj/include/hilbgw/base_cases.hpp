#pragma once

// Hardcoded two-point data from which every genus-0 invariant is reconstructed.

#include "hilbgw/chow_ring.hpp"

#include <optional>

namespace hilbgw {

namespace detail {

struct TwoPointRow {
  int i;
  int j;
  std::array<int, 3> by_a;  // a = 0, 1, 2
};

// I_(a,1)(T_i, T_j) for a <= 2.
inline constexpr std::array<TwoPointRow, 6> kTwoPointTable{{
    {3, 8, {0, 1, 1}},
    {4, 8, {0, 2, 0}},
    {5, 8, {1, 1, 0}},
    {6, 6, {0, 1, 4}},
    {6, 7, {0, 2, -2}},
    {7, 7, {1, -2, 1}},
}};

}  // namespace detail

/// Base cases on Hilb^2(P^2). Expects a canonical, dimension-admissible key.
inline std::optional<Rational> hilb2_base_case(const InvariantKey& key) {
  const auto [a, b] = key.cls;
  const int n = key.size();
  if (b == 0 && a >= 1 && n == 1) {
    // I_(a,0)(T3) = 3/a^2, while T4 and S5 = T5 + T3 impose two conditions and give 0.
    Rational t3(3, a * a);
    t3.canonicalize();
    if (key.mult[3] == 1) return t3;
    if (key.mult[4] == 1) return Rational(0);
    if (key.mult[5] == 1) return Rational(-t3);
    return std::nullopt;
  }
  if (b == 1 && a > 2) return Rational(0);
  if (b == 1 && n == 2) {
    const auto ins = key.insertions();
    for (const auto& row : detail::kTwoPointTable)
      if (ins[0] == row.i && ins[1] == row.j) return Rational(row.by_a[static_cast<std::size_t>(a)]);
  }
  return std::nullopt;
}

/// The projective plane needs only the line through two points.
inline std::optional<Rational> p2_base_case(const InvariantKey& key) {
  if (key.cls == CurveClass{1, 0} && key.size() == 2 && key.mult[2] == 2) return Rational(1);
  return std::nullopt;
}

}  // namespace hilbgw
