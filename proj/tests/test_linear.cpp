#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nilcert/relations.hpp"
#include "nilcert/sparse.hpp"

using namespace nilcert;

namespace {

SparseMatrix random_matrix(std::uint32_t p, std::size_t rows, std::size_t cols, std::mt19937& rng, int density = 3) {
  SparseMatrix m(p, cols);
  std::uniform_int_distribution<int> val(-3, 3), col(0, static_cast<int>(cols) - 1), cnt(0, density);
  for (std::size_t r = 0; r < rows; ++r) {
    std::vector<SparseMatrix::Entry> e;
    for (int k = cnt(rng); k > 0; --k) e.emplace_back(col(rng), Scalar(val(rng), p));
    m.add_row(std::move(e));
  }
  return m;
}

std::vector<Scalar> times(const SparseMatrix& m, const std::vector<Scalar>& v) {
  std::vector<Scalar> out;
  for (const auto& row : m.rows) {
    Scalar s = Scalar::zero(m.p);
    for (const auto& [c, x] : row) s += x * v[c];
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("rank plus nullity is the column count") {
  std::mt19937 rng(7);
  for (std::uint32_t p : {0u, 2u, 3u, 7u})
    for (int trial = 0; trial < 20; ++trial) {
      SparseMatrix m = random_matrix(p, 12, 10, rng);
      auto basis = nullspace_basis(m);
      CHECK(rank(m) + basis.size() == m.cols);
      for (const auto& v : basis)
        for (const Scalar& s : times(m, v)) CHECK(s.is_zero());
    }
}

TEST_CASE("known ranks") {
  SparseMatrix m(0, 3);
  m.add_row({{0, Scalar(1, 0)}, {1, Scalar(1, 0)}});
  m.add_row({{1, Scalar(1, 0)}, {2, Scalar(1, 0)}});
  m.add_row({{0, Scalar(1, 0)}, {2, Scalar(-1, 0)}});
  CHECK(rank(m) == 2);
  SparseMatrix m2(2, 3);
  m2.add_row({{0, Scalar(1, 2)}, {1, Scalar(1, 2)}});
  m2.add_row({{1, Scalar(1, 2)}, {2, Scalar(1, 2)}});
  m2.add_row({{0, Scalar(1, 2)}, {2, Scalar(-1, 2)}});
  CHECK(rank(m2) == 2);
  m2.add_row({{0, Scalar(2, 2)}});
  CHECK(m2.rows.back().empty());
  CHECK_THROWS(m2.add_row({{5, Scalar(1, 2)}}));
}

TEST_CASE("membership certificates") {
  std::mt19937 rng(11);
  for (std::uint32_t p : {0u, 3u, 5u})
    for (int trial = 0; trial < 30; ++trial) {
      SparseMatrix m = random_matrix(p, 6, 9, rng);
      std::vector<Scalar> target(m.cols, Scalar::zero(p));
      std::uniform_int_distribution<int> val(-2, 2);
      if (trial % 2) {
        for (auto& t : target) t = Scalar(val(rng), p);
      } else {
        for (const auto& row : m.rows) {
          Scalar f(val(rng), p);
          for (const auto& [c, x] : row) target[c] += f * x;
        }
      }
      Membership res = membership(m, target);
      if (res.in_row_space) {
        REQUIRE(res.row_coeffs.size() == m.row_count());
        std::vector<Scalar> sum(m.cols, Scalar::zero(p));
        for (std::size_t r = 0; r < m.row_count(); ++r)
          for (const auto& [c, x] : m.rows[r]) sum[c] += res.row_coeffs[r] * x;
        CHECK(sum == target);
      } else {
        CHECK(trial % 2 == 1);
        for (const Scalar& s : times(m, res.functional)) CHECK(s.is_zero());
        Scalar pairing = Scalar::zero(p);
        for (std::size_t c = 0; c < m.cols; ++c) pairing += res.functional[c] * target[c];
        CHECK(pairing == res.value);
        CHECK_FALSE(pairing.is_zero());
      }
    }
}

TEST_CASE("tracked combinations reproduce the pivot rows") {
  std::mt19937 rng(3);
  for (std::uint32_t p : {0u, 2u, 7u})
    with_field(p, [&](auto f) {
      using E = decltype(f);
      using Row = typename Eliminator<E>::Row;
      Eliminator<E> el(f, 8, true);
      std::vector<Row> sources;
      SparseMatrix m = random_matrix(p, 14, 8, rng, 4);
      for (const auto& r : m.rows) {
        Row row;
        for (const auto& [c, x] : r) row.emplace_back(c, f.from_scalar(x));
        if (el.insert(row)) sources.push_back(row);
      }
      CHECK(el.rank() == rank(m));
      for (std::uint32_t c : el.pivot_columns()) {
        std::vector<typename E::Elem> sum(8, f.zero());
        for (const auto& [s, b] : el.combination(c))
          for (const auto& [col, x] : sources[s]) sum[col] = f.add(sum[col], f.mul(b, x));
        std::vector<typename E::Elem> want(8, f.zero());
        for (const auto& [col, x] : el.pivot_row(c)) want[col] = x;
        CHECK(sum == want);
      }
      return 0;
    });
}

TEST_CASE("prime field arithmetic") {
  PrimeField f(7);
  for (std::uint32_t a = 1; a < 7; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
  CHECK(f.submul(1, 3, 5) == f.sub(1, 15 % 7));
  CHECK_THROWS(PrimeField(9));
}

TEST_CASE("rational ranks agree with a large control prime") {
  // no small-prime torsion hides in these systems beyond 2 and 3
  for (const Multidegree& m : {Multidegree{3, 2}, Multidegree{3, 3}, Multidegree{2, 2, 1}, Multidegree{3, 1, 1}, Multidegree{2, 2, 2}}) {
    SystemDescriptor q, big;
    q.mdeg = big.mdeg = m;
    q.p = 0;
    big.p = 1000003;
    CHECK(rank(build_system(q).matrix) == rank(build_system(big).matrix));
    big.p = 5;
    CHECK(rank(build_system(q).matrix) == rank(build_system(big).matrix));
  }
}
