#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>

#include "battery.hpp"
#include "mutate.hpp"
#include "nilcert/nil_oracle.hpp"
#include "nilcert/rewrite.hpp"
#include "oracle.hpp"

using namespace nilcert;

namespace {

LinComb L(std::string_view s, std::uint32_t p) { return LinComb::parse(s, p); }

void check_cert(const NilDecision& d) {
  REQUIRE(d.certificate.has_value());
  VerifyResult v = verify_certificate(*d.certificate);
  CHECK_MESSAGE(v.ok, v.reason);
}

void check_mutations(const Certificate& c, std::size_t limit = SIZE_MAX) {
  std::size_t n = mutate::each_single_mutation(
      c, [](const Certificate& m, const std::string& where) { CHECK_MESSAGE(!verify_certificate(m).ok, where); }, limit);
  CHECK(n > 0);
}

SystemDescriptor desc(const Multidegree& m, std::uint32_t p, bool cyclic = false) {
  SystemDescriptor d;
  d.p = p;
  d.mdeg = m;
  d.cyclic = cyclic;
  return d;
}

}  // namespace

TEST_CASE("basic zero tests") {
  auto a = zero_test(L("x1^3", 0), 0);
  CHECK(a.is_zero());
  check_cert(a);
  auto b = zero_test(L("x1^2 x2^2 x1 x2", 3), 3);
  CHECK(b.outcome == Outcome::Nonzero);
  check_cert(b);
  auto c = zero_test(L("x1^2 x2^2 x1 x2", 5), 5);
  CHECK(c.is_zero());
  check_cert(c);
  auto s3 = zero_test(L("x1^2 x2^2 x1", 2), 2);
  CHECK(s3.outcome == Outcome::Nonzero);
  CHECK(zero_test(L("0", 5), 5).is_zero());
  CHECK_THROWS_AS(zero_test(L("x1 + x2", 0), 0), std::invalid_argument);
}

TEST_CASE("identity battery") {
  std::map<std::string, ComponentSolver> solvers;
  for (const auto& id : battery::identities())
    for (std::uint32_t p : id.chars) {
      LinComb e = L(id.expr, p);
      if (e.is_zero()) continue;
      SystemDescriptor d = desc(e.mdeg(), p);
      std::string key = to_json(d).dump();
      auto it = solvers.find(key);
      if (it == solvers.end()) it = solvers.emplace(key, ComponentSolver(d)).first;
      NilDecision r = it->second.test(e);
      CHECK_MESSAGE(r.is_zero(), std::string(id.name + " p=" + std::to_string(p)));
      if (r.certificate) CHECK(verify_certificate(*r.certificate).ok);
    }
}

TEST_CASE("agreement with the dense oracle") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-3, 3);
  const std::vector<Multidegree> ms = {{2, 1}, {3, 1}, {2, 2}, {3, 2}, {2, 1, 1}, {2, 2, 1}, {3, 1, 1}};
  for (std::uint32_t p : {0u, 2u, 3u, 5u})
    for (const Multidegree& m : ms) {
      oracle::Dense span = oracle::system_span(p, m);
      auto words = oracle::words_of(m);
      ComponentSolver solver(desc(m, p));
      CHECK(solver.report().rank == span.rank() - (solver.report().words - solver.report().columns));
      for (int rep = 0; rep < 12; ++rep) {
        LinComb e(p);
        if (rep % 3 == 0) {
          e.add(words[static_cast<std::size_t>(rep) % words.size()], 1);
        } else {
          for (const Word& w : words)
            if (coef(rng) == 0) e.add(w, coef(rng));
        }
        if (e.is_zero()) continue;
        NilDecision r = solver.test(e);
        CHECK(r.is_zero() == span.in_span(span.vec(e)));
        check_cert(r);
        CHECK(zero_test(canonicalize(e * Scalar(1, p)), p).outcome == r.outcome);
      }
    }
}

TEST_CASE("uniformity across large characteristics") {
  const std::vector<Multidegree> ms = {{3, 2}, {3, 3}, {2, 2, 2}, {3, 2, 1}, {3, 1, 1}};
  for (const Multidegree& m : ms)
    for_each_word(m, [&](const Word& w) {
      if (!is_canonical(w)) return;
      Outcome ref = zero_test(LinComb::of(w, 0), 0, 3, {kDefaultColumnBudget, false}).outcome;
      for (std::uint32_t p : {5u, 7u}) CHECK(zero_test(LinComb::of(w, p), p, 3, {kDefaultColumnBudget, false}).outcome == ref);
    });
}

TEST_CASE("component dimensions") {
  CHECK(component_dimension(Multidegree{3, 2}, 0) > 0);
  CHECK(component_dimension(Multidegree{3, 3}, 5) == 0);
  CHECK(component_dimension(Multidegree{3, 3}, 3) == 1);
  CHECK(component_dimension(Multidegree{1, 1, 1, 1, 1, 1}, 0) == 0);
  CHECK(component_dimension(Multidegree{1, 1, 1, 1, 1}, 0) > 0);
}

TEST_CASE("component decisions and their certificates") {
  auto z = decide_component(desc({3, 3}, 5));
  CHECK(z.outcome == Outcome::Zero);
  REQUIRE(z.certificate);
  CHECK(verify_certificate(*z.certificate).ok);
  check_mutations(*z.certificate);
  auto n = decide_component(desc({3, 2}, 2));
  CHECK(n.outcome == Outcome::Nonzero);
  REQUIRE(n.nonzero_word);
  REQUIRE(n.certificate);
  CHECK(verify_certificate(*n.certificate).ok);
  auto big = decide_component(desc({4, 1}, 0));
  CHECK(big.outcome == Outcome::Zero);
}

TEST_CASE("certificates reject single mutations") {
  auto zero = zero_test(L("x1^2 x2^2 x1 x2", 5), 5);
  check_mutations(*zero.certificate);
  auto nz = zero_test(L("x1^2 x2^2 x1", 0), 0);
  check_mutations(*nz.certificate);
  auto t = zero_test(L("x1 x2 x1 + x1^2 x2 + x2 x1^2", 3), 3);
  CHECK(t.is_zero());
  check_mutations(*t.certificate);
}

TEST_CASE("certificates survive a json round trip") {
  auto r = zero_test(L("x1^2 x2^2 x1 x2", 3), 3);
  Certificate back = certificate_from_json(to_json(*r.certificate));
  CHECK(verify_certificate(back).ok);
  CHECK(to_json(back) == to_json(*r.certificate));
  Certificate wrong = back;
  wrong.system.p = 5;
  wrong.target = L("x1^2 x2^2 x1 x2", 5);
  CHECK_FALSE(verify_certificate(wrong).ok);
}

TEST_CASE("explicit functionals") {
  auto s3 = make_functional(FunctionalName::Degree32, {3, 2});
  for (std::uint32_t p : {0u, 2u, 3u, 5u}) {
    std::string why;
    CHECK_MESSAGE(verify_functional(s3, p, &why), why);
    CHECK(evaluate(s3, L("x1^2 x2^2 x1", p)) == Scalar(1, p));
    CHECK(verify_certificate(functional_certificate(s3, p, L("x1^2 x2^2 x1", p))).ok);
  }
  for (int d : {4, 5}) {
    std::vector<int> counts(static_cast<std::size_t>(d), 1);
    counts[0] = 3;
    auto f = make_functional(FunctionalName::SubwordCountF, Multidegree(counts));
    CHECK(verify_functional(f, 2));
    Word v{1, 1};
    for (Letter x = 2; x <= d; ++x) v.push_back(x);
    v.push_back(1);
    CHECK(f.value(v) == 1);
    // a solution only in characteristic 2
    CHECK_FALSE(verify_functional(f, 3));
    CHECK_FALSE(verify_functional(f, 0));
  }
  CHECK_THROWS_AS(make_functional(FunctionalName::Degree32, {3, 3}), std::invalid_argument);
  CHECK_THROWS_AS(make_functional(FunctionalName::ParityPlus, {2, 1}), std::invalid_argument);
  CHECK(functional_from_name("PARITY_MINUS") == FunctionalName::ParityMinus);
}

TEST_CASE("parity chain") {
  for (int k = 1; k <= 3; ++k) {
    ParityChain c = parity_chain(k);
    CHECK(c.ok());
    CHECK(c.image == c.expected);
    CHECK(c.plus_value == Scalar(k % 2 == 1 ? 1 : -1, 3));
    CHECK(c.minus_value == Scalar(k % 2 == 1 ? -1 : 1, 3));
  }
}

TEST_CASE("nilpotency degree, small cases") {
  CHECK(nilpotency_degree(2, 0).lower == 6);
  CHECK(nilpotency_degree(2, 0).exact());
  auto r = nilpotency_degree(2, 3);
  CHECK(r.exact());
  CHECK(r.lower == 7);
  REQUIRE(r.lower_certificate);
  CHECK(verify_certificate(*r.lower_certificate).ok);
  auto odd = nilpotency_degree(5, 3);
  CHECK(odd.lower == 15);
  CHECK(odd.upper == 16);
  CHECK(odd.lower_route == "pi_parity_square");
  auto s = sorted_multidegrees(6, 2);
  CHECK(s.size() == 4);
  CHECK(s.front() == Multidegree{3, 3});
  CHECK(s.back() == Multidegree{4, 2});
}
