#pragma once

// Small quantum cohomology of Hilb^2(P^2) as power series in q1, q2 truncated
// at q1^N1 q2^N2:
//   g1 * g2 = cup(g1, g2) + sum_{(a,b) != 0} sum_i I_(a,b)(g1, g2, T_i) q1^a q2^b T_dual(i).

#include "hilbgw/wdvv_engine.hpp"

namespace hilbgw {

/// Scalar bivariate series with coefficients for 0 <= a <= n1, 0 <= b <= n2.
class ScalarSeries {
 public:
  ScalarSeries(int n1, int n2) : n1_(n1), n2_(n2), c_(static_cast<std::size_t>((n1 + 1) * (n2 + 1))) {
    if (n1 < 0 || n2 < 0) throw std::invalid_argument("truncation bounds must be nonnegative");
  }

  static ScalarSeries constant(const Rational& c, int n1, int n2) {
    ScalarSeries s(n1, n2);
    s.at(0, 0) = c;
    return s;
  }
  static ScalarSeries monomial(int a, int b, const Rational& c, int n1, int n2) {
    ScalarSeries s(n1, n2);
    if (a <= n1 && b <= n2) s.at(a, b) = c;
    return s;
  }

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  Rational& at(int a, int b) { return c_[index(a, b)]; }
  const Rational& at(int a, int b) const { return c_[index(a, b)]; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& q) { return q == 0; });
  }

  ScalarSeries& operator+=(const ScalarSeries& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  ScalarSeries& operator-=(const ScalarSeries& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend ScalarSeries operator+(ScalarSeries x, const ScalarSeries& y) { return x += y; }
  friend ScalarSeries operator-(ScalarSeries x, const ScalarSeries& y) { return x -= y; }
  friend ScalarSeries operator*(const ScalarSeries& x, const ScalarSeries& y) {
    x.check(y);
    ScalarSeries r(x.n1_, x.n2_);
    for (int a = 0; a <= x.n1_; ++a)
      for (int b = 0; b <= x.n2_; ++b) {
        if (x.at(a, b) == 0) continue;
        for (int c = 0; a + c <= x.n1_; ++c)
          for (int d = 0; b + d <= x.n2_; ++d) r.at(a + c, b + d) += x.at(a, b) * y.at(c, d);
      }
    return r;
  }
  friend ScalarSeries operator*(const Rational& s, ScalarSeries x) {
    for (auto& c : x.c_) c *= s;
    return x;
  }
  friend bool operator==(const ScalarSeries&, const ScalarSeries&) = default;

 private:
  std::size_t index(int a, int b) const {
    if (a < 0 || b < 0 || a > n1_ || b > n2_) throw std::out_of_range("series index out of range");
    return static_cast<std::size_t>(a * (n2_ + 1) + b);
  }
  void check(const ScalarSeries& o) const {
    if (o.n1_ != n1_ || o.n2_ != n2_) throw std::invalid_argument("series truncation mismatch");
  }

  int n1_, n2_;
  std::vector<Rational> c_;
};

/// f = q1 / (1 - q1), truncated at q1^n1.
inline ScalarSeries f_series(int n1, int n2 = 0) {
  ScalarSeries f(n1, n2);
  for (int a = 1; a <= n1; ++a) f.at(a, 0) = 1;
  return f;
}

/// Series with CohVector coefficients.
class QSeries {
 public:
  QSeries(std::size_t basis, int n1, int n2)
      : n1_(n1), n2_(n2), c_(static_cast<std::size_t>((n1 + 1) * (n2 + 1)), CohVector(basis)) {
    if (n1 < 0 || n2 < 0) throw std::invalid_argument("truncation bounds must be nonnegative");
  }

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  std::size_t basis() const { return c_.front().size(); }
  CohVector& at(int a, int b) { return c_[index(a, b)]; }
  const CohVector& at(int a, int b) const { return c_[index(a, b)]; }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const CohVector& v) { return v.is_zero(); });
  }

  QSeries& operator+=(const QSeries& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  QSeries& operator-=(const QSeries& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend QSeries operator+(QSeries x, const QSeries& y) { return x += y; }
  friend QSeries operator-(QSeries x, const QSeries& y) { return x -= y; }
  friend QSeries operator*(const ScalarSeries& s, const QSeries& x) {
    if (s.n1() != x.n1_ || s.n2() != x.n2_) throw std::invalid_argument("series truncation mismatch");
    QSeries r(x.basis(), x.n1_, x.n2_);
    for (int a = 0; a <= x.n1_; ++a)
      for (int b = 0; b <= x.n2_; ++b) {
        if (s.at(a, b) == 0) continue;
        for (int c = 0; a + c <= x.n1_; ++c)
          for (int d = 0; b + d <= x.n2_; ++d) r.at(a + c, b + d) += s.at(a, b) * x.at(c, d);
      }
    return r;
  }
  friend QSeries operator*(const Rational& s, QSeries x) {
    for (auto& v : x.c_) v *= s;
    return x;
  }
  friend bool operator==(const QSeries&, const QSeries&) = default;

  /// Terms such as "q1^2*(3T7) + q1q2*(T0)"; "0" when empty.
  std::string str() const {
    std::string s;
    for (int a = 0; a <= n1_; ++a)
      for (int b = 0; b <= n2_; ++b) {
        const CohVector& v = at(a, b);
        if (v.is_zero()) continue;
        if (!s.empty()) s += " + ";
        std::string mono;
        if (a > 0) mono += "q1" + (a > 1 ? "^" + std::to_string(a) : std::string());
        if (b > 0) mono += "q2" + (b > 1 ? "^" + std::to_string(b) : std::string());
        s += (mono.empty() ? "" : mono + "*") + "(" + v.str() + ")";
      }
    return s.empty() ? "0" : s;
  }

 private:
  std::size_t index(int a, int b) const {
    if (a < 0 || b < 0 || a > n1_ || b > n2_) throw std::out_of_range("series index out of range");
    return static_cast<std::size_t>(a * (n2_ + 1) + b);
  }
  void check(const QSeries& o) const {
    if (o.n1_ != n1_ || o.n2_ != n2_ || o.basis() != basis()) throw std::invalid_argument("series shape mismatch");
  }

  int n1_, n2_;
  std::vector<CohVector> c_;
};

/// Scalar series times a fixed class.
inline QSeries times(const ScalarSeries& s, const CohVector& v) {
  QSeries r(v.size(), s.n1(), s.n2());
  for (int a = 0; a <= s.n1(); ++a)
    for (int b = 0; b <= s.n2(); ++b)
      if (s.at(a, b) != 0) r.at(a, b) = s.at(a, b) * v;
  return r;
}

inline QSeries small_product(Engine& engine, const CohVector& g1, const CohVector& g2, int n1, int n2) {
  const TargetDatum& X = engine.datum();
  QSeries out(X.size(), n1, n2);
  out.at(0, 0) = cup(X, g1, g2);
  for (int a = 0; a <= n1; ++a)
    for (int b = 0; b <= n2; ++b) {
      const CurveClass cls{a, b};
      if (cls.is_zero() || !X.effective(cls)) continue;
      for (std::size_t i = 0; i < X.size(); ++i) {
        const std::vector<CohVector> ins{g1, g2, CohVector::basis(X.size(), static_cast<int>(i))};
        const Rational v = engine.invariant(cls, ins);
        if (v != 0) out.at(a, b)[static_cast<std::size_t>(X.dual[i])] += v;
      }
    }
  return out;
}

/// Quantum multiplication at fixed truncation, with basis products cached.
class QuantumRing {
 public:
  QuantumRing(Engine& engine, int n1, int n2) : engine_(&engine), n1_(n1), n2_(n2) {
    const std::size_t n = engine.datum().size();
    basis_products_.resize(n * n);
  }

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  std::size_t basis() const { return engine_->datum().size(); }
  CohVector T(int i) const { return CohVector::basis(basis(), i); }
  ScalarSeries scalar(const Rational& c) const { return ScalarSeries::constant(c, n1_, n2_); }
  ScalarSeries f() const { return f_series(n1_, n2_); }
  ScalarSeries q(int a, int b, const Rational& c = 1) const { return ScalarSeries::monomial(a, b, c, n1_, n2_); }

  QSeries product(const CohVector& x, const CohVector& y) {
    QSeries r(basis(), n1_, n2_);
    for (std::size_t i = 0; i < basis(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < basis(); ++j) {
        if (y[j] == 0) continue;
        r += (x[i] * y[j]) * basis_product(static_cast<int>(i), static_cast<int>(j));
      }
    }
    return r;
  }

  /// (sum_beta q^beta c_beta) * y, expanded term by term and truncated.
  QSeries product(const QSeries& s, const CohVector& y) {
    QSeries r(basis(), n1_, n2_);
    for (int a = 0; a <= n1_; ++a)
      for (int b = 0; b <= n2_; ++b) {
        if (s.at(a, b).is_zero()) continue;
        r += q(a, b) * product(s.at(a, b), y);
      }
    return r;
  }

  /// x1 * x2 * ... evaluated left to right.
  QSeries product(std::initializer_list<CohVector> factors) {
    auto it = factors.begin();
    QSeries acc = times(scalar(1), *it++);
    for (; it != factors.end(); ++it) acc = product(acc, *it);
    return acc;
  }

 private:
  const QSeries& basis_product(int i, int j) {
    if (i > j) std::swap(i, j);
    auto& slot = basis_products_[static_cast<std::size_t>(i) * basis() + static_cast<std::size_t>(j)];
    if (!slot) slot = small_product(*engine_, T(i), T(j), n1_, n2_);
    return *slot;
  }

  Engine* engine_;
  int n1_, n2_;
  std::vector<std::optional<QSeries>> basis_products_;
};

struct ProductCheck {
  std::string name;
  QSeries expected;
  QSeries actual;
  bool pass;
  std::string first_mismatch;  // empty when pass
};

struct ProductReport {
  std::vector<ProductCheck> entries;
  bool all_pass() const {
    return std::all_of(entries.begin(), entries.end(), [](const ProductCheck& c) { return c.pass; });
  }
};

/// First coefficient where two series differ, as "q1^a q2^b: expected X, got Y".
inline std::string first_difference(const QSeries& expected, const QSeries& actual) {
  for (int a = 0; a <= expected.n1(); ++a)
    for (int b = 0; b <= expected.n2(); ++b)
      if (expected.at(a, b) != actual.at(a, b))
        return "q1^" + std::to_string(a) + " q2^" + std::to_string(b) + ": expected " + expected.at(a, b).str() + ", got " +
               actual.at(a, b).str();
  return {};
}

/// The nine products of a divisor with a class of codimension at most two, in closed form.
inline std::vector<std::pair<std::string, std::pair<std::pair<int, int>, QSeries>>> closed_form_products(QuantumRing& R) {
  const auto f = R.f();
  const auto one = R.scalar(1);
  auto T = [&](int i) { return R.T(i); };
  auto t = [&](const ScalarSeries& s, int i) { return times(s, T(i)); };
  std::vector<std::pair<std::string, std::pair<std::pair<int, int>, QSeries>>> out;
  auto add = [&](std::string name, int i, int j, QSeries s) { out.push_back({std::move(name), {{i, j}, std::move(s)}}); };
  add("T1*T1", 1, 1, t(one - Rational(3) * f, 3) + t(Rational(3) * f, 5));
  add("T1*T2", 1, 2, t(Rational(2) * one, 3) + t(one, 4));
  add("T2*T2", 2, 2, t(one, 3) + t(one, 4) + t(one, 5));
  add("T1*T3", 1, 3, t(Rational(3) * f, 7) + t(R.q(1, 1) + R.q(2, 1, 2), 0));
  add("T1*T4", 1, 4, t(one, 6) + t(R.q(1, 1, 2), 0));
  add("T1*T5", 1, 5, t(Rational(2) * one, 6) + t(one - Rational(3) * f, 7) + t(R.q(1, 1), 0));
  add("T2*T3", 2, 3, t(one, 6) + t(R.q(1, 1) + R.q(2, 1), 0));
  add("T2*T4", 2, 4, t(one, 6) + t(one, 7) + t(R.q(1, 1, 2), 0));
  add("T2*T5", 2, 5, t(one, 6) + t(Rational(2) * one, 7) + t(R.q(0, 1) + R.q(1, 1), 0));
  return out;
}

inline ProductReport verify_product_table(Engine& engine, int n1, int n2) {
  QuantumRing R(engine, n1, n2);
  ProductReport report;
  for (auto& [name, spec] : closed_form_products(R)) {
    auto& [ij, expected] = spec;
    QSeries actual = R.product(R.T(ij.first), R.T(ij.second));
    const std::string diff = first_difference(expected, actual);
    report.entries.push_back({name, expected, actual, diff.empty(), diff});
  }
  return report;
}

struct RelationCheck {
  std::string name;
  QSeries residual;
  bool pass;
};

/// Residuals of the two quantum deformations of the cubic relations:
///   T1^3 - 9f^2 T1 T2^2 + (9f^2 - 2f) T2^3 - q1 q2 (q1 - 1)
///   (1 - 18f) T2^3 - 3(1 - 6f) T1 T2^2 + 6 T1^2 T2 - q2 (q1^2 - 2q1 + 1)
/// with all products quantum, evaluated left to right.
inline std::vector<RelationCheck> verify_relations(Engine& engine, int n1, int n2) {
  QuantumRing R(engine, n1, n2);
  const auto T1 = R.T(1);
  const auto T2 = R.T(2);
  const auto f = R.f();
  const auto one = R.scalar(1);
  const QSeries t111 = R.product({T1, T1, T1});
  const QSeries t112 = R.product({T1, T1, T2});
  const QSeries t122 = R.product({T1, T2, T2});
  const QSeries t222 = R.product({T2, T2, T2});
  const ScalarSeries f2 = f * f;

  QSeries r1 = t111 - (Rational(9) * f2) * t122 + (Rational(9) * f2 - Rational(2) * f) * t222 -
               times(R.q(1, 1) * (R.q(1, 0) - one), R.T(0));
  QSeries r2 = (one - Rational(18) * f) * t222 - (Rational(3) * (one - Rational(6) * f)) * t122 + Rational(6) * one * t112 -
               times(R.q(0, 1) * (R.q(2, 0) - Rational(2) * R.q(1, 0) + one), R.T(0));
  std::vector<RelationCheck> out;
  out.push_back({"T1*T1*T1 = 9f^2 T1*T2*T2 - (9f^2-2f) T2*T2*T2 + q1q2(q1-1)", r1, r1.is_zero()});
  out.push_back({"(1-18f) T2*T2*T2 - 3(1-6f) T1*T2*T2 + 6 T1*T1*T2 = q2(q1^2-2q1+1)", r2, r2.is_zero()});
  return out;
}

}  // namespace hilbgw
