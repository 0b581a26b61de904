#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "nilcert/instance.hpp"
#include "nilcert/lincomb.hpp"
#include "nilcert/word.hpp"

namespace nilcert {

/// One rewriting move:  word = expand(instance) + sum coeff * successor.
struct RewriteStep {
  IdentityInstance instance;
  std::vector<std::pair<Word, int>> successors;
  Letter letter = 0;  // the letter the move acts on
};

/// The move the canonicalization strategy applies to w, or nothing when w is
/// canonical.  Cubes of any letter are erased first; otherwise the least
/// non-canonical letter is treated.
std::optional<RewriteStep> rewrite_step(const Word& w);

/// The move for letter x alone (x-cubes erased, then x u x -> -x^2 u - u x^2
/// and x u x^2 -> -x^2 u x at the leftmost offending blocks).
std::optional<RewriteStep> rewrite_step_for_letter(const Word& w, Letter x);

/// (number of x-blocks, sum over single-letter blocks k of (blocks - k)).
/// Every move for x strictly decreases it on successors without an x-cube.
std::pair<int, int> rewrite_measure(const Word& w, Letter x);

/// Memoized integer canonical forms.  Canonical words get dense ids in the
/// order they are first met.  With only_letter set, only moves for that
/// letter are used.  n = 2 disables rewriting (every word is terminal).
class Canonicalizer {
 public:
  using Expansion = std::vector<std::pair<std::uint32_t, std::int64_t>>;

  explicit Canonicalizer(Letter only_letter = 0, int n = 3) : only_(only_letter), n_(n) {}

  /// Integer combination of canonical ids equal to w modulo the identities.
  const Expansion& expand(const Word& w);
  /// The applied move (nullptr for terminal words).
  const RewriteStep* step(const Word& w);
  /// Longest chain of moves from w to terminal words.
  int depth(const Word& w);

  const Word& canonical_word(std::uint32_t id) const { return canonical_[id]; }
  std::size_t canonical_count() const { return canonical_.size(); }
  /// Id of a terminal word, registering it if new.
  std::uint32_t id_of(const Word& w);

 private:
  struct Entry {
    std::optional<RewriteStep> step;
    Expansion expansion;
    int depth = 0;
  };
  const Entry& entry(const Word& w);

  Letter only_;
  int n_;
  std::unordered_map<std::string, Entry> memo_;
  std::vector<Word> canonical_;
};

/// Rewrites e into a combination of canonical words of the same multidegree.
/// Throws std::invalid_argument for inhomogeneous input.
LinComb canonicalize(const LinComb& e);

/// Canonical with respect to the single letter x.
LinComb canonicalize_letter(const LinComb& e, Letter x);

/// Deletes x_k from every word.  Requires degree 1 or 2 in x_k and another letter.
LinComb substitute_unit(const LinComb& e, Letter k);

/// v1 x^2 u x v2 -> v1 u x v2 - v1 x u v2 after canonicalizing in x.  Only
/// for characteristic 3 and components of degree 3 in x.
LinComb pi_operator(const LinComb& e, Letter x);

}  // namespace nilcert
