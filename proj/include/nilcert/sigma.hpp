#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "nilcert/lincomb.hpp"
#include "nilcert/word.hpp"

namespace nilcert {

/// sigma_k(c) for a cycle c, stored as its least rotation.  Amitsur terms
/// always come from primitive cycles over the summands; after substituting
/// the summand words the cycle may be a power, so primitivity is a query
/// rather than an invariant.
struct SigmaSymbol {
  int k = 1;
  Word cycle;

  static SigmaSymbol make(int k, const Word& w);
  bool primitive() const { return is_primitive(cycle); }
  Multidegree mdeg(std::size_t d = 0) const;
  /// "tr(x1 x2)", "s2(x1)", "det(x1 x2)".
  std::string str() const;

  friend auto operator<=>(const SigmaSymbol&, const SigmaSymbol&) = default;
  friend bool operator==(const SigmaSymbol&, const SigmaSymbol&) = default;
};

/// Product of symbol powers, sorted by symbol, powers positive.
using SigmaMonomial = std::vector<std::pair<SigmaSymbol, int>>;

/// Integer polynomial in sigma symbols with formal coefficient variables
/// q_1..q_s (exponent vectors; empty when unused).
class SigmaPoly {
 public:
  using Key = std::pair<SigmaMonomial, std::vector<int>>;

  static SigmaPoly symbol(const SigmaSymbol& s, std::int64_t coeff = 1);
  static SigmaPoly constant(std::int64_t c);

  const std::map<Key, mpz_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const SigmaMonomial& m, const std::vector<int>& q, const mpz_class& c);

  SigmaPoly& operator+=(const SigmaPoly& o);
  SigmaPoly& operator-=(const SigmaPoly& o);
  SigmaPoly& operator*=(const mpz_class& c);
  friend SigmaPoly operator+(SigmaPoly a, const SigmaPoly& b) { return a += b; }
  friend SigmaPoly operator-(SigmaPoly a, const SigmaPoly& b) { return a -= b; }
  friend SigmaPoly operator*(SigmaPoly a, const mpz_class& c) { return a *= c; }
  friend SigmaPoly operator*(const SigmaPoly& a, const SigmaPoly& b);
  friend bool operator==(const SigmaPoly& a, const SigmaPoly& b) { return a.terms_ == b.terms_; }

  /// Every term has the same multidegree (sum of k * mdeg(cycle)).
  bool is_homogeneous() const;
  std::string str() const;

 private:
  std::map<Key, mpz_class> terms_;
};

nlohmann::json to_json(const SigmaPoly& p);
SigmaPoly sigma_from_json(const nlohmann::json& j);

/// Amitsur's formula: sigma_k(q_1 W_1 + ... + q_s W_s) as a polynomial in sigma
/// symbols of the expanded cycles, with q-exponents recorded per term.
SigmaPoly amitsur_expand(int k, const std::vector<Word>& summands);

enum class NewtonForm { TraceOfSquare, TraceOfCube, TwiceSigma2 };

/// lhs = rhs for the Newton cases:
///   tr(U^2) = tr(U)^2 - 2 s2(U)
///   tr(U^3) = tr(U)^3 - 3 tr(U) s2(U) + 3 s3(U)
///   2 s2(U) = tr(U)^2 - tr(U^2)
struct NewtonIdentity {
  SigmaPoly lhs;
  SigmaPoly rhs;
};
NewtonIdentity newton_reduce(NewtonForm form, const Word& u);

/// Canonical form of a trace combination modulo decomposables.  traces
/// holds sum alpha_i tr(W_i) (one word per cyclic class), sigma2 the
/// remaining sum beta_j s2(U_j).  complete is false when some trace word
/// admits no sound move and is not canonical (e.g. tr(x^3) for p != 3).
struct TraceForm {
  LinComb traces;
  LinComb sigma2;
  bool complete = true;
};

/// tr(sum c_i U_i).  Rewriting moves are applied inside the trace when the
/// word left outside the move is non-empty (the rest is then a product of
/// traces), or for any move when
/// p = 3 (the trace of a T-instance is then 3 s3 or 3 tr, both
/// decomposable or zero).
TraceForm canonical_trace_form(const LinComb& traces, std::uint32_t p);
/// s2(U): at p = 2 via s2(AB) = tr(A^2 B^2) for any split U = AB, at p != 2
/// via s2(U) = -tr(U^2)/2.  A single letter at p = 2 stays as s2.
TraceForm canonical_sigma2_form(const Word& u, std::uint32_t p);

/// Least rotation among the canonical rotations of w, if any.
std::optional<Word> canonical_rotation(const Word& w);

using IntMatrix = std::vector<std::vector<mpz_class>>;

/// Coefficient e_k of det(tI + M) (sum of principal k-minors); e_0 = 1.
mpz_class charpoly_coefficient(const IntMatrix& m, int k);

/// Product of the letters' matrices along w (w non-empty).
IntMatrix evaluate_word(const Word& w, const std::map<Letter, IntMatrix>& assignment);

/// Substitutes each letter by a square integer matrix (all of one size n)
/// and q_l by q_values[l].  Throws on size mismatch or a symbol with k > n.
mpz_class sigma_eval(const SigmaPoly& p, const std::map<Letter, IntMatrix>& assignment,
                     const std::vector<mpz_class>& q_values = {});

}  // namespace nilcert
