#include "nilcert/sparse.hpp"

namespace nilcert {

void SparseMatrix::add_row(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.first < b.first; });
  std::vector<Entry> merged;
  for (auto& e : entries) {
    if (e.first >= cols) throw std::out_of_range("column index out of range");
    if (e.second.characteristic() != p) throw std::invalid_argument("entry of wrong characteristic");
    if (!merged.empty() && merged.back().first == e.first)
      merged.back().second += e.second;
    else
      merged.push_back(std::move(e));
    if (merged.back().second.is_zero()) merged.pop_back();
  }
  rows.push_back(std::move(merged));
}

namespace {

template <class F>
typename Eliminator<F>::Row convert(const F& f, const std::vector<SparseMatrix::Entry>& row) {
  typename Eliminator<F>::Row out;
  out.reserve(row.size());
  for (const auto& [c, s] : row) out.emplace_back(c, f.from_scalar(s));
  return out;
}

}  // namespace

std::size_t rank(const SparseMatrix& m) {
  return with_field(m.p, [&](auto f) {
    Eliminator<decltype(f)> el(f, m.cols);
    for (const auto& row : m.rows) {
      el.insert(convert(f, row));
      if (el.full_rank()) break;
    }
    return el.rank();
  });
}

std::vector<std::vector<Scalar>> nullspace_basis(const SparseMatrix& m) {
  return with_field(m.p, [&](auto f) {
    Eliminator<decltype(f)> el(f, m.cols);
    for (const auto& row : m.rows) el.insert(convert(f, row));
    std::vector<std::vector<Scalar>> basis;
    for (std::uint32_t c : el.free_columns()) {
      auto v = el.null_vector(c);
      std::vector<Scalar> s;
      s.reserve(v.size());
      for (const auto& e : v) s.push_back(f.to_scalar(e));
      basis.push_back(std::move(s));
    }
    return basis;
  });
}

Membership membership(const SparseMatrix& m, const std::vector<Scalar>& target) {
  if (target.size() != m.cols) throw std::invalid_argument("target length differs from the column count");
  return with_field(m.p, [&](auto f) {
    using F = decltype(f);
    Eliminator<F> el(f, m.cols, true);
    std::vector<std::size_t> source_row;  // source id -> matrix row
    for (std::size_t i = 0; i < m.rows.size(); ++i)
      if (el.insert(convert(f, m.rows[i]))) source_row.push_back(i);
    typename Eliminator<F>::Row t;
    for (std::uint32_t c = 0; c < target.size(); ++c) {
      if (target[c].characteristic() != m.p) throw std::invalid_argument("target entry of wrong characteristic");
      if (!target[c].is_zero()) t.emplace_back(c, f.from_scalar(target[c]));
    }
    typename Eliminator<F>::Row combo;
    auto residual = el.reduce(t, &combo);
    Membership out;
    if (residual.empty()) {
      out.in_row_space = true;
      out.row_coeffs.assign(m.rows.size(), Scalar::zero(m.p));
      for (const auto& [s, v] : combo) out.row_coeffs[source_row[s]] = f.to_scalar(v);
      return out;
    }
    // residual lives on free columns; the null vector of its first column pairs to its entry
    auto [free_col, value] = residual.front();
    auto v = el.null_vector(free_col);
    out.functional.reserve(v.size());
    for (const auto& e : v) out.functional.push_back(f.to_scalar(e));
    out.value = f.to_scalar(value);
    return out;
  });
}

}  // namespace nilcert
