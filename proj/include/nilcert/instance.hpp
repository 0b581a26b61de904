#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nilcert/lincomb.hpp"
#include "nilcert/word.hpp"

namespace nilcert {

/// T1(a) = a^n, T2 and T3 its partial and full linearisations, CYCLIC the
/// commutator row u - rot(u) used for trace identities.
enum class IdentityKind { T1, T2, T3, Cyclic };

const char* kind_name(IdentityKind k);
IdentityKind kind_from_name(const std::string& name);

/// One bordered identity instance g1 T_k(f...) g2, or a cyclic row.
struct IdentityInstance {
  IdentityKind kind = IdentityKind::T1;
  Word left;               // g1, possibly empty
  std::vector<Word> args;  // f1..f3, each non-empty; for Cyclic the rotated word
  Word right;              // g2, possibly empty
  int offset = 0;          // Cyclic only

  static IdentityInstance t1(Word g1, Word f, Word g2) { return {IdentityKind::T1, std::move(g1), {std::move(f)}, std::move(g2), 0}; }
  static IdentityInstance t2(Word g1, Word a, Word b, Word g2) {
    return {IdentityKind::T2, std::move(g1), {std::move(a), std::move(b)}, std::move(g2), 0};
  }
  static IdentityInstance t3(Word g1, Word a, Word b, Word c, Word g2) {
    return {IdentityKind::T3, std::move(g1), {std::move(a), std::move(b), std::move(c)}, std::move(g2), 0};
  }
  static IdentityInstance cyclic(Word u, int offset) { return {IdentityKind::Cyclic, {}, {std::move(u)}, {}, offset}; }

  /// Stable text key used to merge repeated rows in certificates.
  std::string key() const;
  /// "x1 T2(x2, x3^2) x1".
  std::string str() const;

  friend bool operator==(const IdentityInstance&, const IdentityInstance&) = default;
};

/// Integer expansion terms of an instance (words may repeat) for the
/// nil-exponent n (3, or 2 for the cross-check system).
std::vector<std::pair<Word, int>> expand_terms(const IdentityInstance& inst, int n = 3);

/// The literal expansion with coefficients in characteristic p.
LinComb expand_identity(const IdentityInstance& inst, std::uint32_t p, int n = 3);

/// Multidegree of the expansion over at least d letters.
Multidegree instance_mdeg(const IdentityInstance& inst, std::size_t d = 0, int n = 3);

nlohmann::json to_json(const IdentityInstance& inst);
IdentityInstance instance_from_json(const nlohmann::json& j);

}  // namespace nilcert
