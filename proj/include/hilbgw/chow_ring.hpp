#pragma once

// Cohomology rings of divisor-generated targets, packaged as the data the
// reconstruction engine consumes.

#include "hilbgw/rational.hpp"

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hilbgw {

inline constexpr std::size_t kMaxBasis = 9;

/// Effective curve class a*B1 + b*B2. Rank-one targets leave b at zero.
struct CurveClass {
  int a = 0;
  int b = 0;

  bool is_zero() const { return a == 0 && b == 0; }
  friend bool operator==(const CurveClass&, const CurveClass&) = default;
  /// Stage order: b first, then a.
  friend std::strong_ordering operator<=>(const CurveClass& x, const CurveClass& y) {
    if (auto c = x.b <=> y.b; c != 0) return c;
    return x.a <=> y.a;
  }
  CurveClass operator-(const CurveClass& o) const { return {a - o.a, b - o.b}; }
  CurveClass operator+(const CurveClass& o) const { return {a + o.a, b + o.b}; }
};

inline std::string to_string(const CurveClass& c) {
  return "(" + std::to_string(c.a) + "," + std::to_string(c.b) + ")";
}

/// Canonical identity of a genus-0 invariant: curve class plus the multiset of
/// non-divisor insertions, stored as a multiplicity per basis index.
struct InvariantKey {
  CurveClass cls;
  std::array<std::uint8_t, kMaxBasis> mult{};

  int size() const {
    int n = 0;
    for (auto m : mult) n += m;
    return n;
  }

  std::vector<int> insertions() const {
    std::vector<int> out;
    for (std::size_t i = 0; i < kMaxBasis; ++i)
      for (int k = 0; k < mult[i]; ++k) out.push_back(static_cast<int>(i));
    return out;
  }

  static InvariantKey from_insertions(CurveClass cls, std::span<const int> indices) {
    InvariantKey key{cls, {}};
    for (int i : indices) {
      if (i < 0 || static_cast<std::size_t>(i) >= kMaxBasis)
        throw std::out_of_range("basis index out of range");
      ++key.mult[static_cast<std::size_t>(i)];
    }
    return key;
  }

  friend bool operator==(const InvariantKey&, const InvariantKey&) = default;
  friend auto operator<=>(const InvariantKey& x, const InvariantKey& y) {
    if (auto c = x.cls <=> y.cls; c != 0) return c;
    if (auto c = x.size() <=> y.size(); c != 0) return c;
    return x.mult <=> y.mult;
  }
};

struct InvariantKeyHash {
  std::size_t operator()(const InvariantKey& k) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
      h ^= v;
      h *= 1099511628211ull;
    };
    mix(static_cast<std::uint32_t>(k.cls.a));
    mix(static_cast<std::uint32_t>(k.cls.b));
    for (auto m : k.mult) mix(m);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

inline std::string to_string(const InvariantKey& k) {
  std::string s = "I" + to_string(k.cls) + "(";
  bool first = true;
  for (int i : k.insertions()) {
    if (!first) s += ",";
    s += "T" + std::to_string(i);
    first = false;
  }
  return s + ")";
}

/// Element of the cohomology ring in the target's fixed basis.
class CohVector {
 public:
  CohVector() = default;
  explicit CohVector(std::size_t n) : coeffs_(n) {}
  CohVector(std::initializer_list<Rational> init) : coeffs_(init) {}

  static CohVector basis(std::size_t n, int i) {
    CohVector v(n);
    v.coeffs_.at(static_cast<std::size_t>(i)) = 1;
    return v;
  }

  std::size_t size() const { return coeffs_.size(); }
  Rational& operator[](std::size_t i) { return coeffs_[i]; }
  const Rational& operator[](std::size_t i) const { return coeffs_[i]; }
  auto begin() const { return coeffs_.begin(); }
  auto end() const { return coeffs_.end(); }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return q == 0; });
  }

  CohVector& operator+=(const CohVector& o) {
    check_size(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  CohVector& operator-=(const CohVector& o) {
    check_size(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  CohVector& operator*=(const Rational& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  friend CohVector operator+(CohVector x, const CohVector& y) { return x += y; }
  friend CohVector operator-(CohVector x, const CohVector& y) { return x -= y; }
  friend CohVector operator*(const Rational& s, CohVector x) { return x *= s; }
  friend bool operator==(const CohVector&, const CohVector&) = default;

  /// Human-readable form such as "2T3 + T4" or "-3/2T7".
  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      const Rational& c = coeffs_[i];
      if (c == 0) continue;
      Rational mag = abs(c);
      if (first) {
        if (c < 0) os << "-";
      } else {
        os << (c < 0 ? " - " : " + ");
      }
      if (mag != 1) os << mag.get_str();
      os << "T" << i;
      first = false;
    }
    return first ? "0" : os.str();
  }

 private:
  void check_size(const CohVector& o) const {
    if (o.size() != size()) throw std::invalid_argument("CohVector size mismatch");
  }
  std::vector<Rational> coeffs_;
};

using CupTable = std::vector<std::vector<CohVector>>;

/// One summand c * (T_divisor cup T_lower) of a basis class.
struct DecompositionTerm {
  int divisor;
  int lower;
  Rational coeff;
  friend bool operator==(const DecompositionTerm&, const DecompositionTerm&) = default;
};

/// Everything the reconstruction engine needs to know about a target X.
struct TargetDatum {
  std::string name;
  int dimension = 0;
  int class_rank = 2;
  std::vector<int> codim;
  std::vector<int> divisors;
  /// For each basis index, its intersection numbers with (B1, B2); zero off the divisors.
  std::vector<std::array<int, 2>> divisor_pairing;
  /// -K . (a,b) = anticanonical[0]*a + anticanonical[1]*b.
  std::array<int, 2> anticanonical{};
  CupTable cup;
  std::vector<int> dual;
  std::vector<std::vector<DecompositionTerm>> decomposition;
  std::function<std::optional<Rational>(const InvariantKey&)> base_case;

  std::size_t size() const { return codim.size(); }
  int point_index() const { return dual.at(0); }
  bool is_divisor(int i) const { return codim[static_cast<std::size_t>(i)] == 1; }

  bool effective(const CurveClass& c) const {
    if (c.a < 0 || c.b < 0) return false;
    return class_rank == 2 || c.b == 0;
  }

  int pairing(int divisor, const CurveClass& c) const {
    const auto& p = divisor_pairing[static_cast<std::size_t>(divisor)];
    return p[0] * c.a + p[1] * c.b;
  }

  int anticanonical_degree(const CurveClass& c) const {
    return anticanonical[0] * c.a + anticanonical[1] * c.b;
  }

  /// Sum of (codim - 1) over insertions that a nonzero invariant of class c must have.
  int required_weight(const CurveClass& c) const { return anticanonical_degree(c) + dimension - 3; }

  int weight(int i) const { return codim[static_cast<std::size_t>(i)] - 1; }

  /// Dimension constraint on a canonical key (divisors already stripped).
  bool admissible(const InvariantKey& k) const {
    int w = 0;
    for (std::size_t i = 0; i < size(); ++i) w += k.mult[i] * weight(static_cast<int>(i));
    return w == required_weight(k.cls);
  }
};

inline CohVector cup(const TargetDatum& X, const CohVector& u, const CohVector& v) {
  CohVector out(X.size());
  for (std::size_t i = 0; i < X.size(); ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < X.size(); ++j) {
      if (v[j] == 0) continue;
      const Rational s = u[i] * v[j];
      const CohVector& p = X.cup[i][j];
      for (std::size_t k = 0; k < X.size(); ++k)
        if (p[k] != 0) out[k] += s * p[k];
    }
  }
  return out;
}

inline CohVector cup(const TargetDatum& X, int i, int j) {
  return X.cup.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j));
}

/// Degree of the top-codimension part.
inline Rational integrate(const TargetDatum& X, const CohVector& v) {
  return v[static_cast<std::size_t>(X.point_index())];
}

inline int dual_index(const TargetDatum& X, int e) { return X.dual.at(static_cast<std::size_t>(e)); }

inline const std::vector<DecompositionTerm>& decompose(const TargetDatum& X, int m) {
  if (X.codim.at(static_cast<std::size_t>(m)) < 2)
    throw std::invalid_argument("decompose: T" + std::to_string(m) + " has codimension below 2");
  return X.decomposition[static_cast<std::size_t>(m)];
}

/// True when every nonzero coordinate of v sits in codimension c.
inline bool is_pure(const TargetDatum& X, const CohVector& v, int c) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0 && X.codim[i] != c) return false;
  return true;
}

namespace detail {

/// Exact Gauss-Jordan solve of A x = rhs for square invertible A.
inline std::vector<Rational> solve_square(std::vector<std::vector<Rational>> A, std::vector<Rational> rhs) {
  const std::size_t n = A.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && A[piv][col] == 0) ++piv;
    if (piv == n) throw std::logic_error("singular basis-change matrix");
    std::swap(A[piv], A[col]);
    std::swap(rhs[piv], rhs[col]);
    const Rational inv = 1 / A[col][col];
    for (auto& x : A[col]) x *= inv;
    rhs[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || A[r][col] == 0) continue;
      const Rational f = A[r][col];
      for (std::size_t c = 0; c < n; ++c) A[r][c] -= f * A[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  return rhs;
}

/// Polynomials in two divisor generators x = T1, y = T2 for Hilb^2(P^2).
/// Normal form modulo x^3 = 0 and y^3 = 3xy^2 - 6x^2y; the monomials
/// x^i y^j with i <= 2, j <= 2 span, and the degree-4 part is a multiple of x^2y^2.
class HilbPoly {
 public:
  using Exponent = std::pair<int, int>;

  HilbPoly() = default;
  HilbPoly(std::initializer_list<std::pair<const Exponent, Rational>> init) : terms_(init) { reduce(); }

  friend HilbPoly operator*(const HilbPoly& p, const HilbPoly& q) {
    HilbPoly r;
    for (const auto& [e, c] : p.terms_)
      for (const auto& [f, d] : q.terms_) r.terms_[{e.first + f.first, e.second + f.second}] += c * d;
    r.reduce();
    return r;
  }

  const std::map<Exponent, Rational>& terms() const { return terms_; }

 private:
  void reduce() {
    bool changed = true;
    while (changed) {
      changed = false;
      std::map<Exponent, Rational> next;
      for (const auto& [e, c] : terms_) {
        if (c == 0) continue;
        auto [i, j] = e;
        if (i >= 3 || i + j > 4) {
          changed = true;
          continue;
        }
        if (j >= 3) {
          // y^3 = 3 x y^2 - 6 x^2 y, from y^3 + c1 y^2 + c2 y = 0 with c1 = -3x, c2 = 6x^2.
          next[{i + 1, j - 1}] += 3 * c;
          next[{i + 2, j - 2}] -= 6 * c;
          changed = true;
          continue;
        }
        next[e] += c;
      }
      std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
      terms_ = std::move(next);
    }
  }

  std::map<Exponent, Rational> terms_;
};

inline const std::array<HilbPoly::Exponent, 9>& hilb_normal_monomials() {
  static const std::array<HilbPoly::Exponent, 9> m{{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}, {2, 1}, {1, 2}, {2, 2}}};
  return m;
}

/// T0..T8 as polynomials in T1, T2. T6 and T7 are the classes dual to T2 and T1.
inline const std::array<HilbPoly, 9>& hilb_basis_polynomials() {
  static const std::array<HilbPoly, 9> basis{
      HilbPoly{{{0, 0}, 1}},
      HilbPoly{{{1, 0}, 1}},
      HilbPoly{{{0, 1}, 1}},
      HilbPoly{{{2, 0}, 1}},
      HilbPoly{{{1, 1}, 1}, {{2, 0}, -2}},
      HilbPoly{{{2, 0}, 1}, {{1, 1}, -1}, {{0, 2}, 1}},
      HilbPoly{{{2, 1}, 1}},
      HilbPoly{{{1, 2}, 1}, {{2, 1}, -3}},
      HilbPoly{{{2, 2}, 1}},
  };
  return basis;
}

inline CohVector hilb_to_basis(const HilbPoly& p) {
  const auto& mono = hilb_normal_monomials();
  const auto& basis = hilb_basis_polynomials();
  // Column k of A holds T_k in normal-form monomial coordinates.
  std::vector<std::vector<Rational>> A(9, std::vector<Rational>(9));
  for (std::size_t k = 0; k < 9; ++k)
    for (const auto& [e, c] : basis[k].terms()) {
      auto it = std::find(mono.begin(), mono.end(), e);
      A[static_cast<std::size_t>(it - mono.begin())][k] = c;
    }
  std::vector<Rational> rhs(9);
  for (const auto& [e, c] : p.terms()) {
    auto it = std::find(mono.begin(), mono.end(), e);
    if (it == mono.end()) throw std::logic_error("polynomial not in normal form");
    rhs[static_cast<std::size_t>(it - mono.begin())] = c;
  }
  auto x = solve_square(std::move(A), std::move(rhs));
  CohVector v(9);
  for (std::size_t k = 0; k < 9; ++k) v[k] = x[k];
  return v;
}

}  // namespace detail

inline const std::vector<int>& hilb2_codims() {
  static const std::vector<int> c{0, 1, 1, 2, 2, 2, 3, 3, 4};
  return c;
}

/// Cup table of Hilb^2(P^2) from its presentation as a P^2-bundle over the dual
/// plane, checked against the Poincare-dual convention  int T_i T_{8-j} = delta_ij.
inline CupTable build_cup_table() {
  const auto& basis = detail::hilb_basis_polynomials();
  CupTable table(9, std::vector<CohVector>(9));
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) table[i][j] = detail::hilb_to_basis(basis[i] * basis[j]);
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 9; ++j) {
      const Rational expected = (i == j) ? 1 : 0;
      if (table[i][8 - j][8] != expected)
        throw std::logic_error("derived cup table violates Poincare duality at (" + std::to_string(i) + "," +
                               std::to_string(j) + ")");
    }
  return table;
}

/// Writes each basis class of codim >= 2 as a combination of divisor products
/// T_D cup T_rho. Candidate products are scanned in (D, rho) order and kept
/// greedily while linearly independent inside the graded piece.
inline std::vector<std::vector<DecompositionTerm>> derive_decomposition(const TargetDatum& X) {
  const std::size_t n = X.size();
  std::vector<std::vector<DecompositionTerm>> out(n);
  const int top = *std::max_element(X.codim.begin(), X.codim.end());
  for (int c = 2; c <= top; ++c) {
    std::vector<int> piece;
    for (std::size_t i = 0; i < n; ++i)
      if (X.codim[i] == c) piece.push_back(static_cast<int>(i));
    std::vector<std::pair<int, int>> chosen;
    std::vector<std::vector<Rational>> rows;  // echelon copy for independence tests
    std::vector<std::vector<Rational>> cols;  // chosen products restricted to the piece
    for (int D : X.divisors)
      for (std::size_t r = 0; r < n; ++r) {
        if (X.codim[r] != c - 1 || chosen.size() == piece.size()) continue;
        const CohVector p = cup(X, D, static_cast<int>(r));
        std::vector<Rational> v;
        for (int m : piece) v.push_back(p[static_cast<std::size_t>(m)]);
        std::vector<Rational> w = v;
        for (const auto& row : rows) {
          std::size_t lead = 0;
          while (row[lead] == 0) ++lead;
          if (w[lead] != 0) {
            const Rational f = w[lead] / row[lead];
            for (std::size_t k = 0; k < w.size(); ++k) w[k] -= f * row[k];
          }
        }
        if (std::all_of(w.begin(), w.end(), [](const Rational& q) { return q == 0; })) continue;
        rows.push_back(w);
        cols.push_back(v);
        chosen.emplace_back(D, static_cast<int>(r));
      }
    if (chosen.size() != piece.size())
      throw std::logic_error("divisor products do not span codimension " + std::to_string(c));
    for (std::size_t t = 0; t < piece.size(); ++t) {
      std::vector<std::vector<Rational>> A(piece.size(), std::vector<Rational>(piece.size()));
      for (std::size_t row = 0; row < piece.size(); ++row)
        for (std::size_t col = 0; col < piece.size(); ++col) A[row][col] = cols[col][row];
      std::vector<Rational> rhs(piece.size());
      rhs[t] = 1;
      auto coeff = detail::solve_square(std::move(A), std::move(rhs));
      auto& terms = out[static_cast<std::size_t>(piece[t])];
      for (std::size_t k = 0; k < chosen.size(); ++k)
        if (coeff[k] != 0) terms.push_back({chosen[k].first, chosen[k].second, coeff[k]});
    }
  }
  return out;
}

/// Checks the structural requirements of a datum; throws std::logic_error on failure.
inline void validate(const TargetDatum& X) {
  const std::size_t n = X.size();
  if (n > kMaxBasis) throw std::logic_error("basis too large");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (X.cup[i][j] != X.cup[j][i]) throw std::logic_error("cup table not commutative");
      const Rational g = integrate(X, X.cup[i][j]);
      const Rational expected = (static_cast<std::size_t>(X.dual[i]) == j) ? 1 : 0;
      if (g != expected) throw std::logic_error("pairing is not the dual involution");
      for (std::size_t k = 0; k < n; ++k) {
        const CohVector left = cup(X, X.cup[i][j], CohVector::basis(n, static_cast<int>(k)));
        const CohVector right = cup(X, CohVector::basis(n, static_cast<int>(i)), X.cup[j][k]);
        if (left != right) throw std::logic_error("cup table not associative");
      }
    }
  for (std::size_t m = 0; m < n; ++m) {
    if (X.codim[m] < 2) continue;
    CohVector sum(n);
    for (const auto& t : X.decomposition[m]) sum += t.coeff * cup(X, t.divisor, t.lower);
    if (sum != CohVector::basis(n, static_cast<int>(m))) throw std::logic_error("decomposition does not reproduce T" + std::to_string(m));
  }
}

/// S5 = T5 + T3, the class of pairs meeting two fixed lines.
inline CohVector hilb2_s5() {
  CohVector v(9);
  v[3] = 1;
  v[5] = 1;
  return v;
}

}  // namespace hilbgw
