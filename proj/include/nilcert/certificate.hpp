#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "nilcert/instance.hpp"
#include "nilcert/lincomb.hpp"
#include "nilcert/relations.hpp"

namespace nilcert {

inline constexpr int kSchemaVersion = 1;

/// target = sum coeff * expand(instance).
struct ZeroCertificate {
  std::vector<std::pair<IdentityInstance, Scalar>> rows;
};

/// A solution of the system (zero entries omitted) with a nonzero value on
/// the target.
struct NonzeroWitness {
  std::vector<std::pair<Word, Scalar>> functional;
  Scalar value;
};

/// Every word of the component is zero: each non-terminal word carries a
/// move word = expand(instance) + sum c * successor, and each terminal word
/// t satisfies t = sum b * reduce(expand(instance)).
struct ComponentZeroCertificate {
  struct Step {
    Word word;
    IdentityInstance instance;
    std::vector<std::pair<Word, int>> successors;
  };
  std::vector<Step> steps;
  std::vector<std::pair<Word, std::vector<std::pair<IdentityInstance, Scalar>>>> spans;
};

struct Certificate {
  SystemDescriptor system;
  LinComb target;
  std::variant<ZeroCertificate, NonzeroWitness, ComponentZeroCertificate> body;

  const char* kind() const;
};

nlohmann::json to_json(const Certificate& c);
/// Throws std::invalid_argument (or json exceptions) on malformed input.
Certificate certificate_from_json(const nlohmann::json& j);

struct VerifyResult {
  bool ok = false;
  std::string reason;
  explicit operator bool() const { return ok; }
};

/// Re-expands every referenced instance (or streams the rebuilt system for
/// witnesses) and checks the certificate's defining identity exactly.
VerifyResult verify_certificate(const Certificate& c);

/// Merges repeated instances and drops zero coefficients.
void compact(ZeroCertificate& z);

/// True when inst may appear in the system d (kind, arity, multidegree).
bool instance_belongs(const IdentityInstance& inst, const SystemDescriptor& d, std::string* why = nullptr);

}  // namespace nilcert
