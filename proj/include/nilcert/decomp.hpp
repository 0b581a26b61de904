#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilcert/lincomb.hpp"
#include "nilcert/nil_oracle.hpp"
#include "nilcert/word.hpp"

namespace nilcert {

enum class Decomposability { Decomposable, Indecomposable, Indeterminate };

const char* decomposability_name(Decomposability d);

/// sum alpha_i tr(U_i), all U_i of one multidegree.  Words stand for their
/// cyclic classes.
struct TraceCombination {
  LinComb terms;

  static TraceCombination of(const Word& u, std::uint32_t p);
  std::uint32_t characteristic() const { return terms.characteristic(); }
  Multidegree mdeg() const { return terms.mdeg(); }
  std::string str() const;
};

/// Modulo (R+)^2.  validity is "complete" when the route decides both ways at
/// this p, "sufficient" when it only proves the direction it reports.
struct DecompDecision {
  std::string expression;
  Multidegree mdeg;
  Decomposability decision = Decomposability::Indeterminate;
  std::string route;
  std::string validity = "sufficient";
  std::optional<NilDecision> basis;
  std::string note;

  bool decided() const { return decision != Decomposability::Indeterminate; }
};

nlohmann::json to_json(const DecompDecision& d, bool with_certificate = false);

/// Holds solved components so repeated reductions reuse them.
class DecompOracle {
 public:
  explicit DecompOracle(std::uint32_t p, SolveOptions opts = {});

  std::uint32_t characteristic() const { return p_; }

  /// Complete criterion at p = 3: the combination vanishes in the system
  /// with cyclic rows.  Throws std::invalid_argument for p != 3.
  DecompDecision trace_decomposable_p3(const TraceCombination& c);

  /// tr(G X) with X of degree 1: decomposable iff G = 0 in N.  Throws
  /// std::invalid_argument when no letter has degree 1.
  DecompDecision lemma3_reduce(const TraceCombination& c);
  DecompDecision lemma3_reduce(const Word& u) { return lemma3_reduce(TraceCombination::of(u, p_)); }

  /// Decomposable when some rotation of u is G X with G = 0 in N.
  DecompDecision lemma3_vanishing(const Word& u);

  /// tr(G X^2), X not in G.  Tests gx + xg.
  DecompDecision lemma5_reduce(const Word& g, Letter x);

  /// tr(X^2 U X V), X in neither.  Tests ux^2v - 2vx^2u - x^2uv - uvx^2, or
  /// vx^2u + uxvx + xuxv when U or V is empty.
  DecompDecision lemma6_reduce(const Word& u, const Word& v, Letter x);

  /// Tries the routes in turn; at p = 3 the criterion decides.
  DecompDecision decide_trace(const TraceCombination& c);
  DecompDecision decide_trace(const Word& u) { return decide_trace(TraceCombination::of(u, p_)); }

  /// s2(U) through its trace form; a single letter is indecomposable.
  DecompDecision decide_sigma2(const Word& u);

  /// s_k(x) for k = 2, 3 of one letter.
  DecompDecision decide_sigma_letter(int k);

  NilDecision zero_test(const LinComb& e, bool cyclic = false);

 private:
  DecompDecision decide_word(const Word& w);

  std::uint32_t p_;
  SolveOptions opts_;
  std::map<std::string, std::unique_ptr<ComponentSolver>> solvers_;
  std::map<std::string, bool> over_budget_;
};

DecompDecision trace_decomposable_p3(const TraceCombination& c, const SolveOptions& opts = {});
DecompDecision lemma3_reduce(const Word& u, std::uint32_t p, const SolveOptions& opts = {});
DecompDecision lemma5_reduce(const Word& g, Letter x, std::uint32_t p, const SolveOptions& opts = {});
DecompDecision lemma6_reduce(const Word& u, const Word& v, Letter x, std::uint32_t p, const SolveOptions& opts = {});

/// e_k(t1, t2, t3) is not a polynomial in e_1..e_{k-1} over GF(p) (Q for
/// p = 0), checked in degree k.
bool elementary_independent(int k, std::uint32_t p);

/// The named invariants for (d, p) with observed and expected decisions.
struct Theorem2Entry {
  std::string label;
  std::string expected;
  DecompDecision decision;

  bool matches() const { return expected == decomposability_name(decision.decision); }
};

/// lower <= value <= upper; upper = 0 when no upper bound was established.
struct DegreeBound {
  int lower = 0;
  int upper = 0;
  std::vector<int> expected;

  bool exact() const { return upper != 0 && lower == upper; }
  bool matches() const;
};

nlohmann::json to_json(const DegreeBound& b);

struct Theorem2Report {
  int d = 0;
  std::uint32_t p = 0;
  std::vector<Theorem2Entry> entries;
  DegreeBound d_tr;
  std::optional<DegreeBound> d_sigma2;  // reported at p = 2
  DegreeBound d_total;
  int nilpotency_upper = 0;
  std::vector<std::string> notes;
};

nlohmann::json to_json(const Theorem2Report& r, bool with_certificates = false);

/// Expected D(3, d, K); two values where only the alternative is known.
std::vector<int> expected_d(int d, std::uint32_t p);

Theorem2Report theorem2_report(int d, std::uint32_t p, const SolveOptions& opts = {});

}  // namespace nilcert
