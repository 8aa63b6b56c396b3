#pragma once

// Genus-0 Gromov-Witten invariants of a divisor-generated target by WDVV
// reconstruction from two-point data.
//
// Invariants are grouped into stages (class, n) where n counts non-divisor
// insertions. Stages are ordered by (b, a, n). Every WDVV equation harvested
// for a stage mentions only that stage's unknowns and invariants from strictly
// earlier stages, which are resolved on demand and memoized.

#include "hilbgw/chow_ring.hpp"
#include "hilbgw/linear_system.hpp"

#include <atomic>
#include <deque>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace hilbgw {

enum class Provenance { base_case, solved, loaded };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::base_case: return "base-case";
    case Provenance::solved: return "solved";
    case Provenance::loaded: return "loaded";
  }
  return "?";
}

/// Equation sources, tried in order until a stage is fully determined.
enum class HarvestTier {
  targeted = 0,    // one reducing selection (t; u, v) per unknown
  primary = 1,     // every selection (t; {u, v}) per unknown
  exhaustive = 2,  // every frame (divisor, j, k, l) and every extra multiset in the stage
};

inline const char* to_string(HarvestTier t) {
  switch (t) {
    case HarvestTier::targeted: return "targeted";
    case HarvestTier::primary: return "primary";
    case HarvestTier::exhaustive: return "exhaustive";
  }
  return "?";
}

struct StageId {
  CurveClass cls;
  int n = 0;
  friend bool operator==(const StageId&, const StageId&) = default;
  friend std::strong_ordering operator<=>(const StageId& x, const StageId& y) {
    if (auto c = x.cls <=> y.cls; c != 0) return c;
    return x.n <=> y.n;
  }
};

inline StageId stage_of(const InvariantKey& k) { return {k.cls, k.size()}; }

inline std::string to_string(const StageId& s) { return to_string(s.cls) + "/n=" + std::to_string(s.n); }

struct UnderdeterminedStage : std::runtime_error {
  UnderdeterminedStage(const StageId& s, HarvestTier tier, std::size_t open)
      : std::runtime_error("stage " + to_string(s) + " underdetermined after " + to_string(tier) + " harvest (" +
                           std::to_string(open) + " unknowns open)"),
        stage(s),
        last_tier(tier) {}
  StageId stage;
  HarvestTier last_tier;
};

/// One equation after normalization: sum terms[k] * I(k) + constant.
struct LinearForm {
  std::map<InvariantKey, Rational> terms;
  Rational constant;

  bool is_zero() const { return terms.empty() && constant == 0; }

  void add(const InvariantKey& k, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms.try_emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  LinearForm& operator+=(const LinearForm& o) {
    for (const auto& [k, c] : o.terms) add(k, c);
    constant += o.constant;
    return *this;
  }
  LinearForm& operator-=(const LinearForm& o) {
    for (const auto& [k, c] : o.terms) add(k, -c);
    constant -= o.constant;
    return *this;
  }
};

/// Thread-safe key -> value store. Entries are write-once.
class MemoStore {
 public:
  struct Entry {
    Rational value;
    Provenance provenance;
  };

  const Entry* find(const InvariantKey& k) const {
    std::shared_lock lock(mu_);
    auto it = map_.find(k);
    return it == map_.end() ? nullptr : &it->second;
  }

  /// Inserts or confirms an entry. Throws std::logic_error on a conflicting value.
  const Entry& insert(const InvariantKey& k, const Rational& v, Provenance p) {
    std::unique_lock lock(mu_);
    auto [it, inserted] = map_.try_emplace(k, Entry{v, p});
    if (!inserted && it->second.value != v)
      throw std::logic_error("memo conflict at " + to_string(k) + ": " + it->second.value.get_str() + " vs " + v.get_str());
    return it->second;
  }

  std::size_t size() const {
    std::shared_lock lock(mu_);
    return map_.size();
  }

  std::vector<std::pair<InvariantKey, Entry>> snapshot() const {
    std::shared_lock lock(mu_);
    std::vector<std::pair<InvariantKey, Entry>> out(map_.begin(), map_.end());
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  }

 private:
  mutable std::shared_mutex mu_;
  // Node-based: references to entries survive rehashing.
  std::unordered_map<InvariantKey, Entry, InvariantKeyHash> map_;
};

struct StageReport {
  StageId stage;
  HarvestTier tier;
  std::size_t unknowns;
  std::size_t equations;
};

struct EngineOptions {
  HarvestTier first_tier = HarvestTier::targeted;
};

class Engine {
 public:
  using Frame = std::array<int, 4>;

  explicit Engine(const TargetDatum& X, EngineOptions opts = {}) : X_(&X), opts_(opts) {
    for (std::size_t i = 0; i < X.size(); ++i) by_codim_[static_cast<std::size_t>(X.codim[i])].push_back(static_cast<int>(i));
    for (std::size_t i = 0; i < X.size(); ++i)
      if (X.codim[i] >= 2) non_divisors_.push_back(static_cast<int>(i));
  }

  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  const TargetDatum& datum() const { return *X_; }
  MemoStore& memo() { return memo_; }
  const MemoStore& memo() const { return memo_; }

  std::optional<Rational> base_case(const InvariantKey& k) const { return X_->base_case ? X_->base_case(k) : std::nullopt; }

  /// Multilinear expansion into canonical keys: divisors stripped by the divisor
  /// axiom, fundamental-class and inadmissible terms dropped.
  LinearForm normalize(const CurveClass& cls, std::span<const CohVector> insertions) const {
    if (cls.is_zero()) throw std::invalid_argument("normalize: degree-zero class");
    LinearForm out;
    if (!X_->effective(cls)) return out;
    std::map<std::array<std::uint8_t, kMaxBasis>, Rational> partial{{{}, Rational(1)}};
    for (const CohVector& v : insertions) {
      if (v.size() != X_->size()) throw std::invalid_argument("normalize: insertion has wrong size");
      std::map<std::array<std::uint8_t, kMaxBasis>, Rational> next;
      for (const auto& [mult, c] : partial)
        for (std::size_t i = 0; i < X_->size(); ++i) {
          if (v[i] == 0 || X_->codim[i] == 0) continue;
          Rational f = c * v[i];
          auto m = mult;
          if (X_->codim[i] == 1) {
            f *= X_->pairing(static_cast<int>(i), cls);
          } else {
            ++m[i];
          }
          if (f != 0) next[m] += f;
        }
      partial = std::move(next);
    }
    for (const auto& [mult, c] : partial) {
      InvariantKey k{cls, mult};
      if (c != 0 && X_->admissible(k)) out.add(k, c);
    }
    return out;
  }

  /// Exact value of I_cls(insertions).
  Rational invariant(const CurveClass& cls, std::span<const CohVector> insertions) {
    const LinearForm f = normalize(cls, insertions);
    Rational total = f.constant;
    for (const auto& [k, c] : f.terms) total += c * resolve(k);
    return total;
  }

  Rational invariant(const CurveClass& cls, std::span<const int> indices) {
    std::vector<CohVector> ins;
    for (int i : indices) {
      if (i < 0 || static_cast<std::size_t>(i) >= X_->size()) throw std::out_of_range("basis index out of range");
      ins.push_back(CohVector::basis(X_->size(), i));
    }
    return invariant(cls, ins);
  }

  Rational invariant(const InvariantKey& k) {
    if (k.cls.is_zero()) throw std::invalid_argument("invariant: degree-zero class");
    if (!X_->effective(k.cls) || !X_->admissible(k)) return 0;
    return resolve(k);
  }

  /// LHS - RHS of the WDVV relation for pairings (i j | k l) versus (i l | j k),
  /// with degree-zero contributions collapsed into cup products.
  LinearForm build_equation(const CurveClass& cls, const Frame& frame, std::span<const int> extras) {
    if (cls.is_zero()) throw std::invalid_argument("build_equation: degree-zero class");
    LinearForm form;
    if (!X_->effective(cls)) return form;
    const auto [i, j, k, l] = frame;
    if (j == l) return form;
    std::array<std::uint8_t, kMaxBasis> E{};
    for (int x : extras) {
      if (x < 0 || static_cast<std::size_t>(x) >= X_->size()) throw std::out_of_range("basis index out of range");
      ++E[static_cast<std::size_t>(x)];
    }
    const StageId stage{cls, static_cast<int>(extras.size()) + 3};
    collapsed(form, stage, E, i, j, k, l, Rational(1));
    collapsed(form, stage, E, i, l, j, k, Rational(-1));
    const auto subs = submultisets(E);
    form.constant += products(stage, subs, i, j, k, l);
    form.constant -= products(stage, subs, i, l, j, k);
    return form;
  }

  /// Fully resolved value of build_equation; zero whenever the engine is sound.
  Rational wdvv_residual(const CurveClass& cls, const Frame& frame, std::span<const int> extras) {
    const LinearForm f = build_equation(cls, frame, extras);
    Rational total = f.constant;
    for (const auto& [k, c] : f.terms) total += c * resolve(k);
    return total;
  }

  /// Resolved value of the (i j | k l) side alone, with the same collapsing.
  Rational wdvv_side(const CurveClass& cls, const Frame& frame, std::span<const int> extras) {
    if (cls.is_zero()) throw std::invalid_argument("wdvv_side: degree-zero class");
    if (!X_->effective(cls)) return 0;
    const auto [i, j, k, l] = frame;
    std::array<std::uint8_t, kMaxBasis> E{};
    for (int x : extras) {
      if (x < 0 || static_cast<std::size_t>(x) >= X_->size()) throw std::out_of_range("basis index out of range");
      ++E[static_cast<std::size_t>(x)];
    }
    const StageId stage{cls, static_cast<int>(extras.size()) + 3};
    LinearForm form;
    collapsed(form, stage, E, i, j, k, l, Rational(1));
    Rational total = form.constant + products(stage, submultisets(E), i, j, k, l);
    for (const auto& [key, c] : form.terms) total += c * resolve(key);
    return total;
  }

  /// Every admissible canonical key of a stage.
  std::vector<InvariantKey> admissible_keys(const StageId& s) const {
    std::vector<InvariantKey> out;
    if (!X_->effective(s.cls) || s.cls.is_zero()) return out;
    InvariantKey k{s.cls, {}};
    enumerate_multisets(s.n, X_->required_weight(s.cls), 0, k.mult, [&](const auto& m) {
      out.push_back(InvariantKey{s.cls, m});
    });
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Solves every admissible key of the stage not already known.
  void solve_stage(const StageId& s) {
    auto keys = admissible_keys(s);
    std::erase_if(keys, [&](const InvariantKey& k) { return known(k); });
    if (!keys.empty()) solve_keys(s, std::move(keys));
  }

  /// Computes the given keys on up to `threads` workers sharing this engine.
  void prefetch(std::span<const InvariantKey> keys, unsigned threads) {
    threads = std::max(1u, threads);
    if (threads == 1) {
      for (const auto& k : keys) invariant(k);
      return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    {
      std::vector<std::jthread> pool;
      for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&] {
          for (std::size_t idx; (idx = next++) < keys.size();) {
            try {
              invariant(keys[idx]);
            } catch (...) {
              std::lock_guard lock(failure_mu);
              if (!failure) failure = std::current_exception();
            }
          }
        });
    }
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<StageReport> reports() const {
    std::lock_guard lock(report_mu_);
    return reports_;
  }

 private:
  using Mult = std::array<std::uint8_t, kMaxBasis>;

  struct SubMultiset {
    Mult A;
    Mult B;
    long count;  // labelled splittings realising this (A, B)
    int weightA;
  };

  // A basis-index insertion list stripped to a key. factor == 0 means the term vanishes.
  struct Term {
    long factor;
    InvariantKey key;
  };

  bool known(const InvariantKey& k) const { return memo_.find(k) != nullptr; }

  Term make_term(const CurveClass& cls, const Mult& base, std::initializer_list<int> extra) const {
    Term t{1, InvariantKey{cls, base}};
    if (!X_->effective(cls)) return {0, t.key};
    for (int x : extra) {
      const int c = X_->codim[static_cast<std::size_t>(x)];
      if (c == 0) return {0, t.key};
      if (c == 1) {
        t.factor *= X_->pairing(x, cls);
        if (t.factor == 0) return t;
      } else {
        ++t.key.mult[static_cast<std::size_t>(x)];
      }
    }
    if (!X_->admissible(t.key)) t.factor = 0;
    return t;
  }

  /// Value of a key from memo, base case, or by solving its stage.
  const Rational& resolve(const InvariantKey& k) {
    if (const auto* e = memo_.find(k)) return e->value;
    if (auto bc = base_case(k)) return memo_.insert(k, *bc, Provenance::base_case).value;
    solve_keys(stage_of(k), {k});
    const auto* e = memo_.find(k);
    if (!e) throw std::logic_error("solve did not produce " + to_string(k));
    return e->value;
  }

  bool is_unknown(const InvariantKey& k, const StageId& stage) {
    if (stage_of(k) != stage || known(k)) return false;
    if (auto bc = base_case(k)) {
      memo_.insert(k, *bc, Provenance::base_case);
      return false;
    }
    return true;
  }

  void add_term(LinearForm& form, const StageId& stage, const Term& t, const Rational& coeff) {
    if (t.factor == 0 || coeff == 0) return;
    const Rational c = coeff * t.factor;
    if (is_unknown(t.key, stage)) {
      form.add(t.key, c);
    } else {
      if (stage_of(t.key) > stage) throw std::logic_error("equation reaches later stage " + to_string(t.key));
      form.constant += c * resolve(t.key);
    }
  }

  // I(i, j, k cup l, E) + I(k, l, i cup j, E)
  void collapsed(LinearForm& form, const StageId& stage, const Mult& E, int i, int j, int k, int l, const Rational& sign) {
    const auto& kl = X_->cup[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
    const auto& ij = X_->cup[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    for (std::size_t x = 0; x < X_->size(); ++x) {
      if (kl[x] != 0) add_term(form, stage, make_term(stage.cls, E, {i, j, static_cast<int>(x)}), sign * kl[x]);
      if (ij[x] != 0) add_term(form, stage, make_term(stage.cls, E, {k, l, static_cast<int>(x)}), sign * ij[x]);
    }
  }

  std::vector<SubMultiset> submultisets(const Mult& E) const {
    std::vector<SubMultiset> out{{Mult{}, E, 1, 0}};
    for (std::size_t x = 0; x < kMaxBasis; ++x) {
      if (E[x] == 0) continue;
      std::vector<SubMultiset> next;
      for (const auto& s : out)
        for (int take = 0; take <= E[x]; ++take) {
          SubMultiset t = s;
          t.A[x] = static_cast<std::uint8_t>(take);
          t.B[x] = static_cast<std::uint8_t>(E[x] - take);
          t.count *= binomial(E[x], take).get_si();
          t.weightA += take * X_->weight(static_cast<int>(x));
          next.push_back(t);
        }
      out = std::move(next);
    }
    return out;
  }

  // sum over nonzero splits b1 + b2 = cls, A + B = E, e:
  //   I_b1(i, j, T_e, A) * I_b2(k, l, T_dual(e), B)
  Rational products(const StageId& stage, const std::vector<SubMultiset>& subs, int i, int j, int k, int l) {
    const CurveClass beta = stage.cls;
    Integer acc_int = 0;
    Rational acc_frac = 0;
    Integer scratch;
    const int maxb = X_->class_rank == 2 ? beta.b : 0;
    for (int b1 = 0; b1 <= maxb; ++b1)
      for (int a1 = 0; a1 <= beta.a; ++a1) {
        const CurveClass c1{a1, b1};
        const CurveClass c2 = beta - c1;
        if (c1.is_zero() || c2.is_zero()) continue;
        const int need = X_->required_weight(c1) - X_->weight(i) - X_->weight(j);
        for (const auto& s : subs) {
          const int ce = need - s.weightA + 1;
          if (ce < 0 || ce >= static_cast<int>(by_codim_.size())) continue;
          for (int e : by_codim_[static_cast<std::size_t>(ce)]) {
            const Term t1 = make_term(c1, s.A, {i, j, e});
            if (t1.factor == 0) continue;
            const Term t2 = make_term(c2, s.B, {k, l, X_->dual[static_cast<std::size_t>(e)]});
            if (t2.factor == 0) continue;
            const Rational& v1 = resolve(t1.key);
            if (v1 == 0) continue;
            const Rational& v2 = resolve(t2.key);
            if (v2 == 0) continue;
            const long scale = s.count * t1.factor * t2.factor;
            if (v1.get_den() == 1 && v2.get_den() == 1) {
              scratch = v1.get_num() * v2.get_num();
              mpz_addmul_ui_signed(acc_int, scratch, scale);
            } else {
              acc_frac += Rational(v1 * v2) * scale;
            }
          }
        }
      }
    return acc_frac + Rational(acc_int);
  }

  static void mpz_addmul_ui_signed(Integer& acc, const Integer& x, long s) {
    if (s >= 0)
      mpz_addmul_ui(acc.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(s));
    else
      mpz_submul_ui(acc.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(-s));
  }

  template <class F>
  void enumerate_multisets(int remaining, int weight_left, std::size_t pos, Mult& m, F&& emit) const {
    if (pos == non_divisors_.size()) {
      if (remaining == 0 && weight_left == 0) emit(m);
      return;
    }
    const int idx = non_divisors_[pos];
    const int w = X_->weight(idx);
    for (int take = 0; take <= remaining && take * w <= weight_left; ++take) {
      m[static_cast<std::size_t>(idx)] = static_cast<std::uint8_t>(take);
      enumerate_multisets(remaining - take, weight_left - take * w, pos + 1, m, emit);
    }
    m[static_cast<std::size_t>(idx)] = 0;
  }

  struct Selection {
    int t, u, v;
  };

  /// Picks (t; u, v) so the same-stage partner term I(rho, u, D cup v, E) either
  /// vanishes or has a codimension-2 insertion. t is a codimension-2 class of the
  /// rarest type when one exists; u, v come from the most common remaining type.
  Selection select(const InvariantKey& key) const {
    Mult m = key.mult;
    auto take = [&](auto better) {
      int best = -1;
      for (int i : non_divisors_)
        if (m[static_cast<std::size_t>(i)] > 0 && (best < 0 || better(i, best))) best = i;
      --m[static_cast<std::size_t>(best)];
      return best;
    };
    auto codim = [&](int i) { return X_->codim[static_cast<std::size_t>(i)]; };
    auto rarest_codim2 = [&](int i, int b) {
      if ((codim(i) == 2) != (codim(b) == 2)) return codim(i) == 2;
      return m[static_cast<std::size_t>(i)] < m[static_cast<std::size_t>(b)];
    };
    auto most_common = [&](int i, int b) { return m[static_cast<std::size_t>(i)] > m[static_cast<std::size_t>(b)]; };
    auto highest = [&](int i, int b) { return codim(i) > codim(b); };
    bool has_codim2 = false;
    for (int i : non_divisors_) has_codim2 |= (m[static_cast<std::size_t>(i)] > 0 && codim(i) == 2);
    if (has_codim2) {
      const int t = take(rarest_codim2);
      const int u = take(most_common);
      const int v = take(most_common);
      return {t, u, v};
    }
    // No codimension-2 insertion: put the top class in v so D cup v = 0.
    const int v = take(highest);
    const int t = take(highest);
    const int u = take(highest);
    return {t, u, v};
  }

  void harvest_selection(std::vector<LinearForm>& out, const InvariantKey& key, int t, int u, int v) {
    Mult rest = key.mult;
    --rest[static_cast<std::size_t>(t)];
    --rest[static_cast<std::size_t>(u)];
    --rest[static_cast<std::size_t>(v)];
    std::vector<int> extras;
    for (std::size_t x = 0; x < kMaxBasis; ++x)
      for (int c = 0; c < rest[x]; ++c) extras.push_back(static_cast<int>(x));
    for (const auto& term : decompose(*X_, t))
      out.push_back(build_equation(key.cls, {term.divisor, term.lower, u, v}, extras));
  }

  std::vector<LinearForm> harvest(const InvariantKey& key, HarvestTier tier) {
    std::vector<LinearForm> out;
    if (key.size() < 3) throw std::logic_error("no WDVV harvest for " + to_string(key) + " (needs 3 insertions)");
    if (tier == HarvestTier::targeted) {
      const auto s = select(key);
      harvest_selection(out, key, s.t, s.u, s.v);
      return out;
    }
    Mult m = key.mult;
    for (int t : non_divisors_) {
      if (m[static_cast<std::size_t>(t)] == 0) continue;
      --m[static_cast<std::size_t>(t)];
      for (int u : non_divisors_) {
        if (m[static_cast<std::size_t>(u)] == 0) continue;
        --m[static_cast<std::size_t>(u)];
        for (int v : non_divisors_) {
          if (v < u || m[static_cast<std::size_t>(v)] == 0) continue;
          harvest_selection(out, key, t, u, v);
        }
        ++m[static_cast<std::size_t>(u)];
      }
      ++m[static_cast<std::size_t>(t)];
    }
    return out;
  }

  std::vector<LinearForm> harvest_exhaustive(const StageId& s) {
    std::vector<LinearForm> out;
    const int req = X_->required_weight(s.cls);
    for (int D : X_->divisors)
      for (int j : non_divisors_)
        for (int k : non_divisors_)
          for (int l : non_divisors_) {
            const int w = req - 1 - X_->weight(j) - X_->weight(k) - X_->weight(l);
            if (w < 0) continue;
            Mult m{};
            enumerate_multisets(s.n - 3, w, 0, m, [&](const Mult& extra) {
              std::vector<int> ex;
              for (std::size_t x = 0; x < kMaxBasis; ++x)
                for (int c = 0; c < extra[x]; ++c) ex.push_back(static_cast<int>(x));
              out.push_back(build_equation(s.cls, {D, j, k, l}, ex));
            });
          }
    return out;
  }

  std::mutex& stage_mutex(const StageId& s) {
    std::lock_guard lock(stage_mu_guard_);
    auto& p = stage_mu_[s];
    if (!p) p = std::make_unique<std::mutex>();
    return *p;
  }

  /// Demand-driven stage solve: the unknown set is the closure of the seeds
  /// under the harvested equations, eliminated jointly.
  void solve_keys(const StageId& stage, std::vector<InvariantKey> seeds) {
    // Lock order follows the stage order, so nested solves cannot deadlock.
    std::lock_guard lock(stage_mutex(stage));
    std::erase_if(seeds, [&](const InvariantKey& k) { return known(k); });
    if (seeds.empty()) return;

    SparseExactSystem sys;
    std::unordered_map<InvariantKey, int, InvariantKeyHash> column;
    std::vector<InvariantKey> keys;
    std::deque<InvariantKey> queue;
    auto column_of = [&](const InvariantKey& k) {
      auto [it, inserted] = column.try_emplace(k, 0);
      if (inserted) {
        it->second = sys.add_column();
        keys.push_back(k);
        queue.push_back(k);
      }
      return it->second;
    };
    std::size_t equations = 0;
    auto add = [&](const LinearForm& f) {
      SparseExactSystem::Row row;
      for (const auto& [k, c] : f.terms) row.emplace_back(column_of(k), c);
      std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      try {
        sys.add_equation(std::move(row), f.constant);
      } catch (const InconsistentSystem& e) {
        throw InconsistentSystem("stage " + to_string(stage) + ": " + e.what());
      }
      ++equations;
    };
    for (const auto& k : seeds) column_of(k);

    HarvestTier tier = opts_.first_tier;
    auto drain = [&] {
      while (!queue.empty()) {
        const InvariantKey k = queue.front();
        queue.pop_front();
        if (sys.determined(column.at(k))) continue;
        for (const auto& f : harvest(k, opts_.first_tier == HarvestTier::exhaustive ? HarvestTier::primary : opts_.first_tier))
          add(f);
      }
    };
    if (tier == HarvestTier::exhaustive) {
      for (const auto& f : harvest_exhaustive(stage)) add(f);
    }
    drain();
    auto open = [&] {
      std::vector<InvariantKey> out;
      for (const auto& k : keys)
        if (!sys.determined(column.at(k))) out.push_back(k);
      return out;
    };
    for (auto pending = open(); !pending.empty(); pending = open()) {
      if (tier == HarvestTier::exhaustive) throw UnderdeterminedStage(stage, tier, pending.size());
      tier = static_cast<HarvestTier>(static_cast<int>(tier) + 1);
      if (tier == HarvestTier::primary) {
        for (const auto& k : pending)
          for (const auto& f : harvest(k, HarvestTier::primary)) add(f);
      } else {
        for (const auto& f : harvest_exhaustive(stage)) add(f);
      }
      drain();
    }
    for (const auto& k : keys) memo_.insert(k, *sys.value(column.at(k)), Provenance::solved);
    std::lock_guard rlock(report_mu_);
    reports_.push_back({stage, tier, keys.size(), equations});
  }

  const TargetDatum* X_;
  EngineOptions opts_;
  std::array<std::vector<int>, 8> by_codim_{};
  std::vector<int> non_divisors_;
  MemoStore memo_;
  std::mutex stage_mu_guard_;
  std::map<StageId, std::unique_ptr<std::mutex>> stage_mu_;
  mutable std::mutex report_mu_;
  std::vector<StageReport> reports_;
};

}  // namespace hilbgw
