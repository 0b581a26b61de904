#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "nilcert/instance.hpp"
#include "nilcert/sparse.hpp"
#include "nilcert/word.hpp"

namespace nilcert {

/// Identifies a linear system S_Lambda: characteristic, nil exponent,
/// multidegree and whether cyclic rows u - rot(u) are added.
struct SystemDescriptor {
  std::uint32_t p = 0;
  int n = 3;
  Multidegree mdeg;
  bool cyclic = false;

  /// Throws std::invalid_argument on composite p, bad n or empty multidegree.
  void validate() const;
  friend bool operator==(const SystemDescriptor& a, const SystemDescriptor& b) {
    return a.p == b.p && a.n == b.n && a.mdeg == b.mdeg && a.cyclic == b.cyclic;
  }
};

nlohmann::json to_json(const SystemDescriptor& d);
SystemDescriptor descriptor_from_json(const nlohmann::json& j);

/// Streams every identity instance of the system (no dedup, no
/// materialisation).  T3 instances are emitted once per unordered argument
/// triple, T2 instances of n = 2 once per unordered pair.
void for_each_instance(const SystemDescriptor& d, const std::function<void(const IdentityInstance&)>& visit,
                       std::size_t budget = kDefaultColumnBudget);

/// Explicit system over all words of the multidegree.
struct RelationSystem {
  SystemDescriptor descriptor;
  std::vector<Word> columns;
  std::unordered_map<Word, std::uint32_t> index;
  SparseMatrix matrix;
  /// Per row: the instance and the scale s with row = s * expand(instance).
  std::vector<IdentityInstance> provenance;
  std::vector<Scalar> scale;

  /// Dense coefficient vector of e over the columns.
  std::vector<Scalar> vectorize(const LinComb& e) const;
};

/// Builds S_Lambda (plus cyclic rows when requested).  Rows are scaled so
/// their first coefficient is 1 (or a positive primitive integer vector for
/// p = 0); zero rows are dropped, and duplicates too when dedup is set.
RelationSystem build_system(const SystemDescriptor& d, bool dedup = true, std::size_t budget = kDefaultColumnBudget);

}  // namespace nilcert
