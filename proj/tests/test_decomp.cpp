#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "nilcert/decomp.hpp"

using namespace nilcert;

namespace {

Word W(std::string_view s) { return Word::parse(s); }

TraceCombination T(std::string_view s, std::uint32_t p) { return {LinComb::parse(s, p)}; }

void check_basis(const DecompDecision& d) {
  if (!d.basis || !d.basis->certificate) return;
  VerifyResult v = verify_certificate(*d.basis->certificate);
  CHECK_MESSAGE(v.ok, std::string(d.expression + ": " + v.reason));
}

constexpr auto DEC = Decomposability::Decomposable;
constexpr auto IND = Decomposability::Indecomposable;
constexpr auto UNK = Decomposability::Indeterminate;

}  // namespace

TEST_CASE("trace criterion at p = 3") {
  auto a = trace_decomposable_p3(T("x1 x2 - x2 x1", 3));
  CHECK(a.decision == DEC);
  CHECK(trace_decomposable_p3(T("x1^3", 3)).decision == DEC);
  auto w = trace_decomposable_p3(T("x1^2 x2^2 x1 x2", 3));
  CHECK(w.decision == IND);
  CHECK(w.validity == "complete");
  check_basis(w);
  CHECK(w.basis->system.cyclic);
  CHECK_THROWS_AS(trace_decomposable_p3(T("x1^3", 5)), std::invalid_argument);
}

TEST_CASE("degree-one letter reduction") {
  auto seven = lemma3_reduce(W("x1 x2 x3 x4 x5 x6 x7"), 5);
  CHECK(seven.decision == DEC);
  check_basis(seven);
  auto s10 = lemma3_reduce(W("x1^2 x2^2 x1 x3"), 2);
  CHECK(s10.decision == IND);
  check_basis(s10);
  for (std::uint32_t p : {0u, 2u, 3u, 5u}) CHECK(lemma3_reduce(W("x1 x2"), p).decision == IND);
  CHECK(lemma3_reduce(W("x1"), 7).decision == IND);
  CHECK_THROWS_AS(lemma3_reduce(W("x1^2 x2^2"), 5), std::invalid_argument);
}

TEST_CASE("square letter reduction") {
  auto a = lemma5_reduce(W("x2"), 1, 0);
  CHECK(a.decision == IND);
  CHECK(a.validity == "complete");
  check_basis(a);
  auto b = lemma5_reduce(W("x2^2 x3^2"), 1, 2);
  CHECK(b.decision == IND);
  CHECK(b.validity == "sufficient");
  auto c = lemma5_reduce(w_word(1, 2), 3, 3);
  CHECK(c.decision == IND);
  check_basis(c);
  // x^2 = tr(X^2): 2x vanishes only at p = 2, where the lemma decides nothing
  CHECK(lemma5_reduce(Word(), 1, 2).decision == UNK);
  CHECK(lemma5_reduce(Word(), 1, 5).decision == IND);
  CHECK_THROWS_AS(lemma5_reduce(W("x1 x2"), 1, 0), std::invalid_argument);
}

TEST_CASE("cube letter reduction") {
  auto a = lemma6_reduce(W("x2^2"), W("x2"), 1, 5);
  CHECK(a.decision == IND);
  check_basis(a);
  auto b = lemma6_reduce(W("x2"), W("x2"), 1, 0);
  CHECK(b.decision == DEC);
  CHECK(b.basis->target == LinComb::parse("-x2 x1^2 x2 - x1^2 x2^2 - x2^2 x1^2", 0));
  check_basis(b);
  // at p = 3 the element for tr(W) vanishes, so the lemma is silent there
  CHECK(lemma6_reduce(W("x2^2"), W("x2"), 1, 3).decision == UNK);
  auto c = lemma6_reduce(W("x2"), W("x3"), 1, 3);
  CHECK(c.decision == IND);
  CHECK(c.validity == "sufficient");
  check_basis(c);
  CHECK_THROWS_AS(lemma6_reduce(W("x1"), W("x2"), 1, 0), std::invalid_argument);
}

TEST_CASE("single letter invariants") {
  for (std::uint32_t p : {0u, 2u, 3u, 5u}) {
    DecompOracle o(p);
    CHECK(o.decide_sigma_letter(2).decision == IND);
    CHECK(o.decide_sigma_letter(3).decision == IND);
    CHECK(o.decide_sigma2(W("x1")).decision == IND);
    CHECK(o.decide_trace(W("x1^2")).decision == (p == 2 ? DEC : IND));
    CHECK(o.decide_trace(W("x1^3")).decision == (p == 3 ? DEC : IND));
    CHECK(o.decide_trace(W("x1^4")).decision == DEC);
    CHECK(o.decide_sigma2(W("x1^2")).decision == DEC);
    for (int k = 1; k <= 3; ++k) CHECK(elementary_independent(k, p));
  }
}

TEST_CASE("s2 at p = 2") {
  DecompOracle o(2);
  auto s = o.decide_sigma2(W("x1 x2"));
  CHECK(s.decision == IND);
  CHECK(o.decide_trace(W("x1^2 x2^2")).decision == IND);
  CHECK(o.decide_sigma2(W("x1 x2 x3 x4")).decision == DEC);
  CHECK(o.decide_sigma2(W("x1 x2 x3")).decision == IND);
}

TEST_CASE("routes agree where both are complete") {
  // p = 3: degree-one reduction and the criterion
  DecompOracle o3(3);
  for (const Multidegree& m : {Multidegree{2, 1}, Multidegree{3, 1}, Multidegree{2, 2, 1}, Multidegree{3, 2, 1},
                               Multidegree{3, 1, 1}, Multidegree{2, 1, 1, 1}}) {
    std::set<Word> classes;
    for_each_word(m, [&](const Word& w) { classes.insert(cyclic_representative(w)); });
    for (const Word& w : classes) {
      auto a = o3.lemma3_reduce(w);
      auto b = o3.trace_decomposable_p3(TraceCombination::of(w, 3));
      CHECK_MESSAGE(a.decision == b.decision, w.str());
    }
  }
  // p in {0, 5, 7}: square and cube reductions on words carrying both patterns
  for (std::uint32_t p : {0u, 5u, 7u}) {
    DecompOracle o(p);
    int compared = 0;
    for (const Multidegree& m : {Multidegree{3, 2}, Multidegree{3, 2, 2}, Multidegree{3, 2, 1}}) {
      for_each_word(m, [&](const Word& w) {
        if (!(w[0] == 1 && w[1] == 1)) return;
        std::size_t j = 2;
        while (w[j] != 1) ++j;
        Word u = w.substr(2, j - 2), v = w.substr(j + 1);
        for (std::size_t r = 0; r < w.size(); ++r) {
          Word rot = w.rotate(r);
          std::size_t n = rot.size();
          if (rot[n - 1] != 2 || rot[n - 2] != 2) continue;
          auto a = o.lemma5_reduce(rot.substr(0, n - 2), 2);
          auto b = o.lemma6_reduce(u, v, 1);
          CHECK_MESSAGE(a.decision == b.decision, w.str());
          ++compared;
          break;
        }
      });
    }
    CHECK(compared > 0);
  }
}

TEST_CASE("indecomposable answers carry nonzero witnesses") {
  for (std::uint32_t p : {0u, 2u, 3u, 5u}) {
    DecompOracle o(p);
    for (const Word& w : {W("x1^2 x2^2 x1 x2"), W("x1^2 x2^2 x3^2"), W("x1^2 x2^2 x1 x3"), W("x1^2 x2 x1 x3")}) {
      auto d = o.decide_trace(w);
      if (d.decision != IND || !d.basis) continue;
      CHECK(d.basis->outcome == Outcome::Nonzero);
      check_basis(d);
    }
  }
}

TEST_CASE("expected values") {
  CHECK(expected_d(1, 5) == std::vector<int>{3});
  CHECK(expected_d(4, 2) == std::vector<int>{6});
  CHECK(expected_d(2, 3) == std::vector<int>{6});
  CHECK(expected_d(3, 3) == std::vector<int>{8});
  CHECK(expected_d(7, 3) == std::vector<int>{20, 21});
  CHECK(expected_d(3, 0) == std::vector<int>{6});
}

TEST_CASE("generator degree reports") {
  const std::vector<std::pair<int, std::uint32_t>> cases = {{1, 0}, {1, 2}, {1, 3}, {2, 0}, {2, 2}, {2, 3},
                                                             {2, 5}, {3, 2}, {3, 3}, {3, 5}, {4, 2}};
  for (const auto& [d, p] : cases) {
    Theorem2Report r = theorem2_report(d, p);
    INFO("d=" << d << " p=" << p);
    for (const auto& e : r.entries) {
      CHECK_MESSAGE(e.matches(), e.label);
      check_basis(e.decision);
    }
    CHECK(r.d_total.exact());
    CHECK(r.d_total.matches());
    if (d >= 2) CHECK(r.d_tr.matches());
    if (r.d_sigma2) CHECK(r.d_sigma2->matches());
    auto j = to_json(r);
    CHECK(j.at("schema_version") == kSchemaVersion);
  }
}
