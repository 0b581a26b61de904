#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nilcert/field.hpp"
#include "nilcert/scalar.hpp"

namespace nilcert {

/// Runs fn(field) with PrimeField(p) or RationalField for p = 0.
template <class Fn>
decltype(auto) with_field(std::uint32_t p, Fn&& fn) {
  if (p == 0) return fn(RationalField{});
  return fn(PrimeField(p));
}

/// Dense scratch vector with a touched list, reused between sparse operations.
template <class F>
class Accumulator {
 public:
  using Elem = typename F::Elem;
  using Row = std::vector<std::pair<std::uint32_t, Elem>>;

  Accumulator(const F& f, std::size_t size) : f_(f), values_(size, f.zero()), marked_(size, 0) {}

  void resize(std::size_t size) {
    if (size > values_.size()) {
      values_.resize(size, f_.zero());
      marked_.resize(size, 0);
    }
  }
  const Elem& at(std::uint32_t c) const { return values_[c]; }
  void add(std::uint32_t c, const Elem& v) {
    touch(c);
    values_[c] = f_.add(values_[c], v);
  }
  // this -= factor * row
  void submul(const Elem& factor, const Row& row) {
    for (const auto& [c, v] : row) {
      touch(c);
      values_[c] = f_.submul(values_[c], factor, v);
    }
  }
  void set_zero(std::uint32_t c) { values_[c] = f_.zero(); }
  /// Sorted non-zero entries; clears the accumulator.
  Row take() {
    std::sort(touched_.begin(), touched_.end());
    Row out;
    for (std::uint32_t c : touched_) {
      if (!f_.is_zero(values_[c])) out.emplace_back(c, values_[c]);
      values_[c] = f_.zero();
      marked_[c] = 0;
    }
    touched_.clear();
    return out;
  }

 private:
  void touch(std::uint32_t c) {
    if (!marked_[c]) {
      marked_[c] = 1;
      touched_.push_back(c);
    }
  }

  F f_;
  std::vector<Elem> values_;
  std::vector<std::uint8_t> marked_;
  std::vector<std::uint32_t> touched_;
};

/// Incremental reduced row echelon form.  The pivot of a row is its least
/// column; rows are taken in arrival order, so the result is deterministic.
/// With tracking on, each pivot row remembers its expression through the
/// inserted rows that became pivots (source ids 0, 1, ... in pivot order).
/// Not safe for concurrent use (shared scratch space).
template <class F>
class Eliminator {
 public:
  using Elem = typename F::Elem;
  using Row = std::vector<std::pair<std::uint32_t, Elem>>;

  Eliminator(F field, std::size_t cols, bool track = false)
      : f_(field), cols_(cols), track_(track), pivot_of_(cols, -1), acc_(field, cols), combo_acc_(field, 0) {}

  const F& field() const { return f_; }
  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }
  bool full_rank() const { return rows_.size() == cols_; }
  bool tracking() const { return track_; }
  bool is_pivot(std::uint32_t c) const { return pivot_of_[c] >= 0; }
  const Row& pivot_row(std::uint32_t c) const { return rows_[static_cast<std::size_t>(pivot_of_[c])]; }
  /// Source combination of the pivot row for column c.
  const Row& combination(std::uint32_t c) const { return combos_[static_cast<std::size_t>(pivot_of_[c])]; }

  /// Residual of row modulo the current row space.  When combo is given, it
  /// receives coefficients b_s with row = residual + sum_s b_s * source_s.
  Row reduce(const Row& row, Row* combo = nullptr) {
    for (const auto& [c, v] : row) {
      if (c >= cols_) throw std::out_of_range("column index out of range");
      acc_.add(c, v);
    }
    if (combo) combo_acc_.resize(rows_.size());
    for (const auto& [c, v0] : row) {
      int r = pivot_of_[c];
      if (r < 0) continue;
      Elem factor = acc_.at(c);
      if (f_.is_zero(factor)) continue;
      acc_.submul(factor, rows_[static_cast<std::size_t>(r)]);
      acc_.set_zero(c);
      if (combo) combo_acc_.submul(f_.neg(factor), combos_[static_cast<std::size_t>(r)]);
    }
    if (combo) *combo = combo_acc_.take();
    return acc_.take();
  }

  /// Adds a row; returns true when the rank grew.
  bool insert(const Row& row) {
    Row combo;
    Row res = reduce(row, track_ ? &combo : nullptr);
    if (res.empty()) return false;
    std::uint32_t lead = res.front().first;
    Elem scale = f_.inv(res.front().second);
    for (auto& [c, v] : res) v = f_.mul(v, scale);
    Row new_combo;
    if (track_) {
      // new pivot = (row - sum b_s source_s) * scale, and row is the new source
      combo_acc_.resize(rows_.size() + 1);
      combo_acc_.submul(f_.neg(scale), Row{{static_cast<std::uint32_t>(rows_.size()), f_.one()}});
      combo_acc_.submul(scale, combo);
      new_combo = combo_acc_.take();
    }
    // clear column lead from the other pivot rows
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Row& other = rows_[r];
      auto it = std::lower_bound(other.begin(), other.end(), lead,
                                 [](const auto& e, std::uint32_t c) { return e.first < c; });
      if (it == other.end() || it->first != lead) continue;
      Elem factor = it->second;
      acc_.submul(f_.neg(f_.one()), other);
      acc_.submul(factor, res);
      other = acc_.take();
      if (track_) {
        combo_acc_.submul(f_.neg(f_.one()), combos_[r]);
        combo_acc_.submul(factor, new_combo);
        combos_[r] = combo_acc_.take();
      }
    }
    pivot_of_[lead] = static_cast<int>(rows_.size());
    pivot_cols_.push_back(lead);
    rows_.push_back(std::move(res));
    if (track_) combos_.push_back(std::move(new_combo));
    return true;
  }

  /// Pivot columns in increasing order.
  std::vector<std::uint32_t> pivot_columns() const {
    std::vector<std::uint32_t> out = pivot_cols_;
    std::sort(out.begin(), out.end());
    return out;
  }
  std::vector<std::uint32_t> free_columns() const {
    std::vector<std::uint32_t> out;
    for (std::uint32_t c = 0; c < cols_; ++c)
      if (pivot_of_[c] < 0) out.push_back(c);
    return out;
  }

  /// Nullspace vector with 1 at free column f: -R[.][f] at pivots.
  std::vector<Elem> null_vector(std::uint32_t free_col) const {
    if (pivot_of_[free_col] >= 0) throw std::invalid_argument("null_vector needs a free column");
    std::vector<Elem> out(cols_, f_.zero());
    out[free_col] = f_.one();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Row& row = rows_[r];
      auto it = std::lower_bound(row.begin(), row.end(), free_col,
                                 [](const auto& e, std::uint32_t c) { return e.first < c; });
      if (it != row.end() && it->first == free_col) out[pivot_cols_[r]] = f_.neg(it->second);
    }
    return out;
  }

 private:
  F f_;
  std::size_t cols_;
  bool track_;
  std::vector<int> pivot_of_;
  std::vector<std::uint32_t> pivot_cols_;
  std::vector<Row> rows_;
  std::vector<Row> combos_;
  Accumulator<F> acc_;
  Accumulator<F> combo_acc_;
};

/// Exact sparse matrix with Scalar entries over one characteristic.
struct SparseMatrix {
  using Entry = std::pair<std::uint32_t, Scalar>;

  SparseMatrix() = default;
  SparseMatrix(std::uint32_t characteristic, std::size_t columns) : p(characteristic), cols(columns) {}

  /// Adds a row; entries are sorted, merged and zero entries dropped.
  void add_row(std::vector<Entry> entries);
  std::size_t row_count() const { return rows.size(); }

  std::uint32_t p = 0;
  std::size_t cols = 0;
  std::vector<std::vector<Entry>> rows;
};

std::size_t rank(const SparseMatrix& m);

/// Basis of {a : M a = 0}, as dense vectors of length cols.
std::vector<std::vector<Scalar>> nullspace_basis(const SparseMatrix& m);

/// Outcome of a row-space membership query.  Exactly one branch is filled:
/// row_coeffs (one per matrix row, target = sum c_i row_i) when the target is
/// in the row space, otherwise a nullspace functional with nonzero pairing.
struct Membership {
  bool in_row_space = false;
  std::vector<Scalar> row_coeffs;
  std::vector<Scalar> functional;
  Scalar value;
};

Membership membership(const SparseMatrix& m, const std::vector<Scalar>& target);

}  // namespace nilcert
