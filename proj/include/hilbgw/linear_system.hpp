#pragma once

#include "hilbgw/rational.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace hilbgw {

struct InconsistentSystem : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Incremental exact elimination for sparse systems  sum_c coeff_c x_c + constant = 0.
/// Pivot rows are kept fully reduced: a pivot row never mentions another pivot column,
/// so a column is determined exactly when its pivot row has no free terms.
class SparseExactSystem {
 public:
  using Row = std::vector<std::pair<int, Rational>>;  // sorted by column, no zeros

  int add_column() {
    pivot_of_.push_back(-1);
    return static_cast<int>(pivot_of_.size()) - 1;
  }

  std::size_t columns() const { return pivot_of_.size(); }
  std::size_t rank() const { return pivots_.size(); }

  /// Adds one equation; throws InconsistentSystem if it reduces to 0 = c with c != 0.
  void add_equation(Row terms, Rational constant) {
    Row free;
    for (auto& [col, coeff] : terms) {
      const int p = pivot_of_.at(static_cast<std::size_t>(col));
      if (p < 0) {
        free = axpy(std::move(free), coeff, Row{{col, Rational(1)}});
      } else {
        // x_col = -(rest + constant)
        const auto& pr = pivots_[static_cast<std::size_t>(p)];
        free = axpy(std::move(free), -coeff, pr.rest);
        constant -= coeff * pr.constant;
      }
    }
    if (free.empty()) {
      if (constant != 0)
        throw InconsistentSystem("equation reduces to 0 = " + constant.get_str());
      return;
    }
    // Lowest free column becomes the pivot.
    const int col = free.front().first;
    const Rational inv = 1 / free.front().second;
    PivotRow row{col, Row(free.begin() + 1, free.end()), constant * inv};
    for (auto& [c, q] : row.rest) q *= inv;
    for (auto& other : pivots_) {
      auto it = std::lower_bound(other.rest.begin(), other.rest.end(), col,
                                 [](const auto& e, int c) { return e.first < c; });
      if (it == other.rest.end() || it->first != col) continue;
      const Rational f = it->second;
      other.rest.erase(it);
      other.rest = axpy(std::move(other.rest), -f, row.rest);
      other.constant -= f * row.constant;
    }
    pivot_of_[static_cast<std::size_t>(col)] = static_cast<int>(pivots_.size());
    pivots_.push_back(std::move(row));
  }

  bool determined(int col) const {
    const int p = pivot_of_.at(static_cast<std::size_t>(col));
    return p >= 0 && pivots_[static_cast<std::size_t>(p)].rest.empty();
  }

  std::optional<Rational> value(int col) const {
    if (!determined(col)) return std::nullopt;
    return Rational(-pivots_[static_cast<std::size_t>(pivot_of_[static_cast<std::size_t>(col)])].constant);
  }

 private:
  struct PivotRow {
    int col;
    Row rest;
    Rational constant;
  };

  /// Returns x + s*y for sorted sparse rows.
  static Row axpy(Row x, const Rational& s, const Row& y) {
    if (s == 0 || y.empty()) return x;
    Row out;
    out.reserve(x.size() + y.size());
    auto i = x.begin();
    auto j = y.begin();
    while (i != x.end() || j != y.end()) {
      if (j == y.end() || (i != x.end() && i->first < j->first)) {
        out.push_back(std::move(*i++));
      } else if (i == x.end() || j->first < i->first) {
        out.emplace_back(j->first, s * j->second);
        ++j;
      } else {
        Rational q = i->second + s * j->second;
        if (q != 0) out.emplace_back(i->first, std::move(q));
        ++i;
        ++j;
      }
    }
    return out;
  }

  std::vector<int> pivot_of_;
  std::vector<PivotRow> pivots_;
};

}  // namespace hilbgw
