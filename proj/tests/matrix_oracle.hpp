#pragma once

#include <map>
#include <random>

#include "nilcert/sigma.hpp"

namespace matrix_oracle {

using namespace nilcert;

inline IntMatrix identity(std::size_t n) {
  IntMatrix m(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IntMatrix mul(const IntMatrix& a, const IntMatrix& b) {
  std::size_t n = a.size();
  IntMatrix c(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline mpz_class trace(const IntMatrix& a) {
  mpz_class t = 0;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

// e_k from power sums: k e_k = sum_i (-1)^(i-1) e_(k-i) p_i.
inline mpz_class newton_e(const IntMatrix& m, int k) {
  std::vector<mpq_class> e{1}, p{0};
  IntMatrix pw = identity(m.size());
  for (int i = 1; i <= k; ++i) {
    pw = mul(pw, m);
    p.push_back(mpq_class(trace(pw)));
  }
  for (int j = 1; j <= k; ++j) {
    mpq_class s = 0;
    for (int i = 1; i <= j; ++i) s += (i % 2 ? 1 : -1) * e[j - i] * p[i];
    e.push_back(s / j);
  }
  return e[k].get_num();
}

inline IntMatrix word_matrix(const Word& w, const std::map<Letter, IntMatrix>& x, std::size_t n) {
  IntMatrix m = identity(n);
  for (std::size_t i = 0; i < w.size(); ++i) m = mul(m, x.at(w[i]));
  return m;
}

inline std::map<Letter, IntMatrix> random_letters(std::mt19937& rng, std::size_t n, int d) {
  std::uniform_int_distribution<int> u(-5, 5);
  std::map<Letter, IntMatrix> x;
  for (Letter l = 1; l <= d; ++l) {
    IntMatrix m(n, std::vector<mpz_class>(n));
    for (auto& row : m)
      for (auto& v : row) v = u(rng);
    x[l] = m;
  }
  return x;
}

inline Word random_word(std::mt19937& rng, int d) {
  std::uniform_int_distribution<int> len(1, 3), let(1, d);
  std::vector<Letter> v(static_cast<std::size_t>(len(rng)));
  for (auto& l : v) l = let(rng);
  return Word(v);
}


}  // namespace matrix_oracle
