#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nilcert/relations.hpp"
#include "oracle.hpp"

using namespace nilcert;

namespace {

SystemDescriptor desc(std::uint32_t p, Multidegree m, int n = 3, bool cyclic = false) {
  SystemDescriptor d;
  d.p = p;
  d.n = n;
  d.mdeg = std::move(m);
  d.cyclic = cyclic;
  return d;
}

}  // namespace

TEST_CASE("smallest component") {
  RelationSystem s = build_system(desc(0, {2, 1}));
  CHECK(s.columns.size() == 3);
  CHECK(rank(s.matrix) == 1);
  CHECK(s.matrix.row_count() == 1);
}

TEST_CASE("system rank equals the naive system rank") {
  const std::vector<Multidegree> ms = {{3}, {2, 1}, {3, 1}, {2, 2}, {3, 2}, {2, 2, 1}, {3, 1, 1}, {2, 1, 1, 1}, {1, 1, 1, 1}};
  for (std::uint32_t p : {0u, 2u, 3u, 5u})
    for (const Multidegree& m : ms)
      for (bool cyclic : {false, true}) {
        auto d = desc(p, m, 3, cyclic);
        std::size_t expected = oracle::system_span(p, m, 3, cyclic).rank();
        CHECK_MESSAGE(rank(build_system(d).matrix) == expected, m.str(), " p=", p, " cyclic=", cyclic);
        CHECK(rank(build_system(d, false).matrix) == expected);
      }
  for (std::uint32_t p : {0u, 2u})
    for (const Multidegree& m : ms) {
      CHECK(rank(build_system(desc(p, m, 2)).matrix) == oracle::system_span(p, m, 2).rank());
    }
}

TEST_CASE("rows are scaled instances") {
  for (std::uint32_t p : {0u, 3u}) {
    RelationSystem s = build_system(desc(p, {2, 2, 1}, 3, true));
    REQUIRE(s.provenance.size() == s.matrix.row_count());
    for (std::size_t r = 0; r < s.matrix.row_count(); ++r) {
      LinComb e = expand_identity(s.provenance[r], p);
      e *= s.scale[r];
      LinComb row(p);
      for (const auto& [c, v] : s.matrix.rows[r]) row.add(s.columns[c], v);
      CHECK(row == e);
    }
  }
}

TEST_CASE("descriptor validation and json") {
  CHECK_THROWS(desc(4, {2, 1}).validate());
  CHECK_THROWS(desc(3, {2, 1}, 4).validate());
  CHECK_THROWS(desc(3, {}).validate());
  auto d = desc(5, {3, 2, 1}, 3, true);
  CHECK(descriptor_from_json(to_json(d)) == d);
  CHECK_THROWS_AS(build_system(desc(0, {3, 3, 3}), true, 100), BudgetExceeded);
}

TEST_CASE("streamed instances lie in the component") {
  auto d = desc(2, {2, 1, 1}, 3, true);
  std::size_t count = 0;
  for_each_instance(d, [&](const IdentityInstance& inst) {
    ++count;
    CHECK(instance_mdeg(inst, 3) == d.mdeg);
  });
  CHECK(count > 0);
}

TEST_CASE("vectorize") {
  RelationSystem s = build_system(desc(0, {2, 1}));
  auto v = s.vectorize(LinComb::parse("x1 x2 x1 - 2 x2 x1^2", 0));
  CHECK(v.size() == 3);
  CHECK_THROWS(s.vectorize(LinComb::parse("x1 x2", 0)));
}
