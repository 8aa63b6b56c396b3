#pragma once

// Independent checks for the engine on the projective plane.

#include "hilbgw/targets.hpp"
#include "hilbgw/wdvv_engine.hpp"

#include <mutex>

namespace hilbgw {

/// Number of rational plane curves of degree d through 3d-1 general points,
/// from Kontsevich's closed recursion
///   N_d = sum_{d1+d2=d} N_d1 N_d2 [d1^2 d2^2 C(3d-4, 3d1-2) - d1^3 d2 C(3d-4, 3d1-1)].
inline Integer kontsevich_nd(int d) {
  if (d <= 0) throw std::invalid_argument("kontsevich_nd: degree must be positive");
  static std::mutex mu;
  static std::vector<Integer> table{0, 1};
  std::lock_guard lock(mu);
  while (static_cast<int>(table.size()) <= d) {
    const long n = static_cast<long>(table.size());
    Integer sum = 0;
    for (long d1 = 1; d1 < n; ++d1) {
      const long d2 = n - d1;
      const Integer a = Integer(d1 * d1 * d2 * d2) * binomial(3 * n - 4, 3 * d1 - 2);
      const Integer b = Integer(d1 * d1 * d1 * d2) * binomial(3 * n - 4, 3 * d1 - 1);
      sum += table[static_cast<std::size_t>(d1)] * table[static_cast<std::size_t>(d2)] * (a - b);
    }
    table.push_back(sum);
  }
  return table[static_cast<std::size_t>(d)];
}

/// Same count from the WDVV engine running on the P^2 datum.
inline Rational engine_nd(Engine& p2_engine, int d) {
  if (d <= 0) throw std::invalid_argument("engine_nd: degree must be positive");
  if (p2_engine.datum().name != "p2") throw std::invalid_argument("engine_nd needs a P^2 engine");
  InvariantKey key{CurveClass{d, 0}, {}};
  key.mult[2] = static_cast<std::uint8_t>(3 * d - 1);
  return p2_engine.invariant(key);
}

inline Rational engine_nd(int d) {
  static Engine engine(p2_datum());
  return engine_nd(engine, d);
}

}  // namespace hilbgw
