#pragma once

#include "hilbgw/base_cases.hpp"
#include "hilbgw/chow_ring.hpp"

namespace hilbgw {

/// Hilb^2(P^2) with basis T0..T8: T1 = pullback of a line from the dual plane,
/// T2 = O(1), T3 = T1^2, T4 = T1T2 - 2T1^2, T5 = T1^2 - T1T2 + T2^2,
/// T6 = B2, T7 = B1 (as curve classes), T8 = point.
inline const TargetDatum& hilb2_datum() {
  static const TargetDatum X = [] {
    TargetDatum d;
    d.name = "hilb2p2";
    d.dimension = 4;
    d.class_rank = 2;
    d.codim = hilb2_codims();
    d.divisors = {1, 2};
    d.divisor_pairing.assign(9, {0, 0});
    d.divisor_pairing[1] = {1, 0};
    d.divisor_pairing[2] = {0, 1};
    d.anticanonical = {0, 3};  // c1(TH) = 3 T2
    d.cup = build_cup_table();
    d.dual = {8, 7, 6, 5, 4, 3, 2, 1, 0};
    d.decomposition = derive_decomposition(d);
    d.base_case = hilb2_base_case;
    validate(d);
    return d;
  }();
  return X;
}

/// P^2 with basis {1, H, H^2}; used to cross-check the engine against
/// Kontsevich's numbers.
inline const TargetDatum& p2_datum() {
  static const TargetDatum X = [] {
    TargetDatum d;
    d.name = "p2";
    d.dimension = 2;
    d.class_rank = 1;
    d.codim = {0, 1, 2};
    d.divisors = {1};
    d.divisor_pairing = {{0, 0}, {1, 0}, {0, 0}};
    d.anticanonical = {3, 0};
    d.cup.assign(3, std::vector<CohVector>(3, CohVector(3)));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; i + j < 3; ++j) d.cup[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(i + j)] = 1;
    d.dual = {2, 1, 0};
    d.decomposition = derive_decomposition(d);
    d.base_case = p2_base_case;
    validate(d);
    return d;
  }();
  return X;
}

}  // namespace hilbgw
