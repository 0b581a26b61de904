#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilcert/certificate.hpp"
#include "nilcert/lincomb.hpp"
#include "nilcert/relations.hpp"
#include "nilcert/word.hpp"

namespace nilcert {

enum class Outcome { Zero, Nonzero, Undecided };

const char* outcome_name(Outcome o);

struct SolveOptions {
  std::size_t budget = kDefaultColumnBudget;
  bool certify = true;
};

/// Result of a zero-test.  Decided results carry a certificate that verifies
/// against the rebuilt system.
struct NilDecision {
  SystemDescriptor system;
  LinComb target;
  Outcome outcome = Outcome::Undecided;
  std::optional<Certificate> certificate;
  std::string note;

  bool is_zero() const { return outcome == Outcome::Zero; }
};

nlohmann::json to_json(const NilDecision& d);

/// Decides e = 0 in N_{n,d} over the prime field of characteristic p.  The
/// system is solved on canonical words (rewriting eliminates the others).
/// Budget overruns give Outcome::Undecided.
NilDecision zero_test(const LinComb& e, std::uint32_t p, int n = 3, const SolveOptions& opts = {});

/// Same, with cyclic rows added (trace identities).
NilDecision zero_test_in(const SystemDescriptor& d, const LinComb& e, const SolveOptions& opts = {});

struct ComponentReport;

/// Solves one component once and answers zero-tests for many targets in it.
/// The constructor throws BudgetExceeded.
class ComponentSolver {
 public:
  explicit ComponentSolver(const SystemDescriptor& d, const SolveOptions& opts = {});
  ~ComponentSolver();
  ComponentSolver(ComponentSolver&&) noexcept;
  ComponentSolver& operator=(ComponentSolver&&) noexcept;

  NilDecision test(const LinComb& e);
  ComponentReport report() const;
  const SystemDescriptor& system() const { return d_; }

  struct Impl;

 private:
  SystemDescriptor d_;
  std::unique_ptr<Impl> impl_;
};

struct ComponentReport {
  SystemDescriptor system;
  std::size_t words = 0;
  std::size_t columns = 0;  // canonical words
  std::size_t rows = 0;     // instances streamed
  std::size_t rank = 0;

  std::size_t dimension() const { return columns - rank; }
};

/// dim N(Lambda) = canonical words - rank of the compressed system.  Throws
/// BudgetExceeded.
ComponentReport component_dimension(const SystemDescriptor& d, std::size_t budget = kDefaultColumnBudget);
std::size_t component_dimension(const Multidegree& m, std::uint32_t p, int n = 3);

/// Whole-component decision: Zero (every word vanishes) or Nonzero with a
/// witness word.  Certificates are ComponentZeroCertificate / NonzeroWitness.
struct ComponentDecision {
  SystemDescriptor system;
  Outcome outcome = Outcome::Undecided;
  std::string route;  // "solve", "structural", "budget"
  std::optional<Word> nonzero_word;
  std::optional<Certificate> certificate;
  ComponentReport report;
};

nlohmann::json to_json(const ComponentDecision& c);

ComponentDecision decide_component(const SystemDescriptor& d, const SolveOptions& opts = {});

// -- explicit solution functionals ------------------------------------------

enum class FunctionalName { Degree32, SubwordCountF, ParityPlus, ParityMinus };

const char* functional_name(FunctionalName f);
FunctionalName functional_from_name(const std::string& name);

struct ExplicitFunctional {
  FunctionalName name;
  Multidegree mdeg;

  /// Value on a word of the multidegree (integer; reduce mod p as needed).
  std::int64_t value(const Word& w) const;
  /// Characteristics where it is claimed to be a solution (empty: all).
  std::vector<std::uint32_t> characteristics() const;
};

/// Throws std::invalid_argument when the multidegree does not fit the name:
/// DEGREE_3_2 needs (3,2), SUBWORD_COUNT_F needs (3,1,...,1), the parity
/// functionals need a multilinear multidegree.
ExplicitFunctional make_functional(FunctionalName name, const Multidegree& m);

/// Streams every row of S_Lambda and checks that the functional annihilates it.
bool verify_functional(const ExplicitFunctional& f, std::uint32_t p, std::string* why = nullptr);

/// Pairing with a combination, in characteristic p.
Scalar evaluate(const ExplicitFunctional& f, const LinComb& e);

/// The functional as an explicit nonzero witness for target.
Certificate functional_certificate(const ExplicitFunctional& f, std::uint32_t p, const LinComb& target);

/// w_{2k} = W12 W34 ... and its image h_{2k} under Pi_1 ... Pi_{2k} (p = 3).
struct ParityChain {
  int k = 0;
  Word word;
  LinComb image;      // computed by the Pi operators
  LinComb expected;   // (x1x2 - x2x1) ... (x_{2k-1}x_{2k} - x_{2k}x_{2k-1})
  Scalar plus_value;  // h_{2k} on N_plus
  Scalar minus_value;
  bool functionals_ok = false;

  bool ok() const { return image == expected && functionals_ok && !plus_value.is_zero(); }
};

ParityChain parity_chain(int k);

nlohmann::json to_json(const ParityChain& c);

/// W_{xy} = x^2 y^2 x y.
Word w_word(Letter x, Letter y);

// -- nilpotency degree ------------------------------------------------------

struct NilpotencyResult {
  int d = 0;
  std::uint32_t p = 0;
  int n = 3;
  int lower = 0;  // C >= lower
  int upper = 0;  // C <= upper, 0 when unknown
  std::string lower_route;
  std::optional<Word> longest_nonzero;
  std::optional<Certificate> lower_certificate;
  std::optional<ParityChain> chain;
  std::vector<ComponentDecision> components;

  bool exact() const { return upper != 0 && lower == upper; }
};

nlohmann::json to_json(const NilpotencyResult& r, bool with_certificates = false);

/// C(n, d, K).  Lower bounds come from the explicit functionals, the parity
/// chain (route "pi_parity_square" extends its word by x^2 for a spare letter;
/// the certificate is still the chain's) and solved components; the value is exact once every sorted multidegree of length C
/// is shown zero.  Components over budget leave an interval.
NilpotencyResult nilpotency_degree(int d, std::uint32_t p, int n = 3, const SolveOptions& opts = {});

/// Expected C(3, d, K); two values where only the alternative is known.
std::vector<int> expected_c(int d, std::uint32_t p);

/// Sorted multidegrees with at most d parts summing to len, lexicographically
/// decreasing, those with a part of 4 or more moved to the end.
std::vector<Multidegree> sorted_multidegrees(int len, int d);

}  // namespace nilcert
