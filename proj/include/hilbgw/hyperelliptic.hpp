#pragma once

// Hyperelliptic plane-curve counts from invariants of Hilb^2(P^2).
//
// A degree-d genus-g hyperelliptic curve corresponds to a rational curve of
// class (d-g-1, d) in the Hilbert scheme, meeting the diagonal in 2g+2 points.
// With l conjugate point pairs,
//   I_(d-g-1,d)(T8^l T4^{3(d-l)+1}) = sum_{h >= g} C(2h+2, h-g) E^l(d, h).

#include "hilbgw/wdvv_engine.hpp"

namespace hilbgw {

struct NonIntegralCount : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NegativeCount : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HyperellipticQuery {
  int d = 2;
  int g = 0;
  int l = 0;

  void check() const {
    if (d < 1) throw std::invalid_argument("degree must be positive");
    if (g < 0 || g > d - 1) throw std::invalid_argument("genus must lie in 0..d-1");
    if (l < 0 || 3 * (d - l) + 1 < 0) throw std::invalid_argument("pair count must lie in 0..d");
  }

  InvariantKey key() const {
    InvariantKey k{CurveClass{d - g - 1, d}, {}};
    k.mult[4] = static_cast<std::uint8_t>(3 * (d - l) + 1);
    k.mult[8] = static_cast<std::uint8_t>(l);
    return k;
  }
};

inline CurveClass genus_to_class(int d, int g) {
  if (g < 0 || g > d - 1) throw std::invalid_argument("genus must lie in 0..d-1");
  return {d - g - 1, d};
}

inline void require_hilb2(const Engine& engine) {
  if (engine.datum().name != "hilb2p2") throw std::invalid_argument("hyperelliptic counts need the Hilb^2(P^2) engine");
}

inline Rational invariant_I(Engine& engine, int d, int g, int l) {
  require_hilb2(engine);
  const HyperellipticQuery q{d, g, l};
  q.check();
  return engine.invariant(q.key());
}

struct CountRow {
  int g;
  Rational invariant;
  Integer count;
};

struct CountTable {
  int d = 0;
  int l = 0;
  std::vector<CountRow> rows;  // g = 0..d-1
};

/// I column from an E column: I(g) = sum_{h >= g} C(2h+2, h-g) E(h).
inline std::vector<Rational> forward_transform(const std::vector<Integer>& counts) {
  const int top = static_cast<int>(counts.size()) - 1;
  std::vector<Rational> out(counts.size());
  for (int g = 0; g <= top; ++g)
    for (int h = g; h <= top; ++h) out[static_cast<std::size_t>(g)] += Rational(binomial(2 * h + 2, h - g) * counts[static_cast<std::size_t>(h)]);
  return out;
}

/// Computes I(d, g, l) for g = d-1 down to 0 and solves the triangular system
/// for E^l(d, g). The top row g = d-1 (class (0, d)) is computed, not assumed zero.
inline CountTable invert_counts(Engine& engine, int d, int l, unsigned threads = 1) {
  require_hilb2(engine);
  if (d < 2) throw std::invalid_argument("degree must be at least 2");
  HyperellipticQuery{d, 0, l}.check();
  std::vector<InvariantKey> keys;
  for (int g = 0; g < d; ++g) keys.push_back(HyperellipticQuery{d, g, l}.key());
  engine.prefetch(keys, threads);

  CountTable table{d, l, std::vector<CountRow>(static_cast<std::size_t>(d))};
  for (int h = d - 1; h >= 0; --h) {
    auto& row = table.rows[static_cast<std::size_t>(h)];
    row.g = h;
    row.invariant = invariant_I(engine, d, h, l);
    Rational e = row.invariant;
    for (int hp = h + 1; hp < d; ++hp) e -= Rational(binomial(2 * hp + 2, hp - h) * table.rows[static_cast<std::size_t>(hp)].count);
    const std::string cell = "E^" + std::to_string(l) + "(" + std::to_string(d) + "," + std::to_string(h) + ") = " + e.get_str();
    if (!is_integer(e)) throw NonIntegralCount(cell);
    if (e < 0) throw NegativeCount(cell);
    row.count = e.get_num();
  }
  return table;
}

/// Genus-0 Severi degree is E^2(d, 0); genus-1 is E^1(d, 1).
inline Rational severi_degree(Engine& engine, int genus, int d) {
  if (genus == 0) {
    if (d < 1) throw std::invalid_argument("genus-0 Severi degree needs d >= 1");
    if (d == 1) return 1;  // the line through two points; no rational curve of class (0,1) exists
    return Rational(invert_counts(engine, d, 2).rows[0].count);
  }
  if (genus == 1) {
    if (d < 3) throw std::invalid_argument("genus-1 Severi degree needs d >= 3");
    return Rational(invert_counts(engine, d, 1).rows[1].count);
  }
  throw std::invalid_argument("Severi degrees are available for genus 0 and 1 only");
}

}  // namespace hilbgw
