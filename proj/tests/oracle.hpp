// Naive reference implementations used only by the tests: every instance is
// generated from every cut of every word (all argument orders, no dedup) and
// ranks come from dense Gaussian elimination.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <vector>

#include "nilcert/instance.hpp"
#include "nilcert/lincomb.hpp"
#include "nilcert/word.hpp"

namespace oracle {

using nilcert::IdentityInstance;
using nilcert::LinComb;
using nilcert::Multidegree;
using nilcert::Word;

inline std::vector<Word> words_of(const Multidegree& m) {
  std::vector<int> letters;
  for (std::size_t i = 0; i < m.letters(); ++i)
    for (int k = 0; k < m[i]; ++k) letters.push_back(static_cast<int>(i) + 1);
  std::vector<Word> out;
  do out.push_back(Word(letters));
  while (std::next_permutation(letters.begin(), letters.end()));
  return out;
}

inline std::vector<IdentityInstance> instances(const Multidegree& m, int n, bool cyclic) {
  std::vector<IdentityInstance> out;
  for (const Word& w : words_of(m)) {
    const std::size_t L = w.size();
    auto sub = [&](std::size_t a, std::size_t b) { return w.substr(a, b - a); };
    if (n == 3) {
      for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = i + 1; j < L; ++j)
          for (std::size_t k = j + 1; k < L; ++k)
            for (std::size_t l = k + 1; l <= L; ++l) {
              Word a = sub(i, j), b = sub(j, k), c = sub(k, l);
              if (a == b && b == c) out.push_back(IdentityInstance::t1(sub(0, i), a, sub(l, L)));
              if (a == b) out.push_back(IdentityInstance::t2(sub(0, i), a, c, sub(l, L)));
              out.push_back(IdentityInstance::t3(sub(0, i), a, b, c, sub(l, L)));
            }
    } else {
      for (std::size_t i = 0; i < L; ++i)
        for (std::size_t j = i + 1; j < L; ++j)
          for (std::size_t k = j + 1; k <= L; ++k) {
            Word a = sub(i, j), b = sub(j, k);
            if (a == b) out.push_back(IdentityInstance::t1(sub(0, i), a, sub(k, L)));
            out.push_back(IdentityInstance::t2(sub(0, i), a, b, sub(k, L)));
          }
    }
    if (cyclic)
      for (std::size_t r = 1; r < L; ++r) out.push_back(IdentityInstance::cyclic(w, static_cast<int>(r)));
  }
  return out;
}

/// Dense matrix over Q (p = 0) or F_p with exact rank and row reduction.
class Dense {
 public:
  Dense(std::uint32_t p, const std::vector<Word>& cols) : p_(p), cols_(cols) {
    for (std::size_t i = 0; i < cols.size(); ++i) index_[cols[i]] = i;
  }

  std::vector<mpq_class> vec(const LinComb& e) const {
    std::vector<mpq_class> v(cols_.size());
    for (const auto& [w, c] : e.terms()) v[index_.at(w)] = c.rational();
    return v;
  }

  // reduces v against the stored echelon rows; returns true if v was independent
  bool add(std::vector<mpq_class> v) {
    reduce(v);
    std::size_t lead = 0;
    while (lead < v.size() && v[lead] == 0) ++lead;
    if (lead == v.size()) return false;
    mpq_class inv = inverse(v[lead]);
    for (auto& x : v) x = norm(x * inv);
    rows_.emplace_back(lead, std::move(v));
    return true;
  }
  bool in_span(std::vector<mpq_class> v) const {
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](const mpq_class& x) { return x == 0; });
  }
  std::size_t rank() const { return rows_.size(); }

 private:
  mpq_class norm(const mpq_class& x) const {
    if (p_ == 0) return x;
    mpz_class num = x.get_num(), den = x.get_den(), pp = p_, inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pp.get_mpz_t());
    mpz_class r = (num * inv) % pp;
    if (r < 0) r += pp;
    return mpq_class(r);
  }
  mpq_class inverse(const mpq_class& x) const {
    if (p_ == 0) return 1 / x;
    mpz_class num = x.get_num(), pp = p_, inv;
    mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), pp.get_mpz_t());
    return mpq_class(inv);
  }
  void reduce(std::vector<mpq_class>& v) const {
    for (auto& x : v) x = norm(x);
    for (const auto& [lead, row] : rows_) {
      if (v[lead] == 0) continue;
      mpq_class f = v[lead];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = norm(v[i] - f * row[i]);
    }
  }

  std::uint32_t p_;
  std::vector<Word> cols_;
  std::map<Word, std::size_t> index_;
  std::vector<std::pair<std::size_t, std::vector<mpq_class>>> rows_;
};

/// Row space of the full naive system of a component.
inline Dense system_span(std::uint32_t p, const Multidegree& m, int n = 3, bool cyclic = false) {
  std::vector<Word> cols = words_of(m);
  Dense d(p, cols);
  for (const auto& inst : instances(m, n, cyclic)) d.add(d.vec(nilcert::expand_identity(inst, p, n)));
  return d;
}

}  // namespace oracle
