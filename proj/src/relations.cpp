#include "nilcert/relations.hpp"

#include <numeric>
#include <string_view>
#include <unordered_set>

namespace nilcert {

void SystemDescriptor::validate() const {
  if (!valid_characteristic(p)) throw std::invalid_argument("characteristic must be 0 or a prime, got " + std::to_string(p));
  if (n != 2 && n != 3) throw std::invalid_argument("nil exponent must be 2 or 3");
  if (mdeg.total() == 0) throw std::invalid_argument("multidegree must be non-zero");
}

nlohmann::json to_json(const SystemDescriptor& d) {
  return {{"char", d.p}, {"n", d.n}, {"mdeg", d.mdeg.counts()}, {"cyclic", d.cyclic}};
}

SystemDescriptor descriptor_from_json(const nlohmann::json& j) {
  SystemDescriptor d;
  d.p = j.at("char").get<std::uint32_t>();
  d.n = j.value("n", 3);
  d.mdeg = Multidegree(j.at("mdeg").get<std::vector<int>>());
  d.cyclic = j.value("cyclic", false);
  d.validate();
  return d;
}

namespace {

// length-first, then lexicographic, as for Word
bool piece_le(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.compare(b) <= 0;
}

Word cut(const std::string& b, std::size_t pos, std::size_t len = std::string::npos) {
  return Word::from_bytes(b.substr(pos, len));
}

void instances_of_word(const std::string& b, int n, const std::function<void(const IdentityInstance&)>& visit) {
  const std::size_t L = b.size();
  std::string_view s(b);
  IdentityInstance inst;
  if (n == 3) {
    for (std::size_t i = 0; i < L; ++i)
      for (std::size_t len = 1; i + 3 * len <= L; ++len)
        if (s.substr(i, len) == s.substr(i + len, len) && s.substr(i, len) == s.substr(i + 2 * len, len)) {
          inst = IdentityInstance::t1(cut(b, 0, i), cut(b, i, len), cut(b, i + 3 * len));
          visit(inst);
        }
    for (std::size_t i = 0; i < L; ++i)
      for (std::size_t a = 1; i + 2 * a < L; ++a) {
        if (s.substr(i, a) != s.substr(i + a, a)) continue;
        for (std::size_t c = 1; i + 2 * a + c <= L; ++c) {
          inst = IdentityInstance::t2(cut(b, 0, i), cut(b, i, a), cut(b, i + 2 * a, c), cut(b, i + 2 * a + c));
          visit(inst);
        }
      }
    for (std::size_t i = 0; i < L; ++i)
      for (std::size_t j = i + 1; j < L; ++j)
        for (std::size_t k = j + 1; k < L; ++k) {
          if (!piece_le(s.substr(i, j - i), s.substr(j, k - j))) continue;
          for (std::size_t l = k + 1; l <= L; ++l) {
            if (!piece_le(s.substr(j, k - j), s.substr(k, l - k))) continue;
            inst = IdentityInstance::t3(cut(b, 0, i), cut(b, i, j - i), cut(b, j, k - j), cut(b, k, l - k), cut(b, l));
            visit(inst);
          }
        }
    return;
  }
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t len = 1; i + 2 * len <= L; ++len)
      if (s.substr(i, len) == s.substr(i + len, len)) {
        inst = IdentityInstance::t1(cut(b, 0, i), cut(b, i, len), cut(b, i + 2 * len));
        visit(inst);
      }
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = i + 1; j < L; ++j)
      for (std::size_t k = j + 1; k <= L; ++k) {
        if (!piece_le(s.substr(i, j - i), s.substr(j, k - j))) continue;
        inst = IdentityInstance::t2(cut(b, 0, i), cut(b, i, j - i), cut(b, j, k - j), cut(b, k));
        visit(inst);
      }
}

}  // namespace

void for_each_instance(const SystemDescriptor& d, const std::function<void(const IdentityInstance&)>& visit,
                       std::size_t budget) {
  d.validate();
  if (word_count(d.mdeg) > budget)
    throw BudgetExceeded("component " + d.mdeg.str() + " exceeds the column budget " + std::to_string(budget));
  for_each_word(d.mdeg, [&](const Word& w) {
    instances_of_word(w.bytes(), d.n, visit);
    if (d.cyclic && w.size() > 1 && w.rotate(1) != w) visit(IdentityInstance::cyclic(w, 1));
  });
}

std::vector<Scalar> RelationSystem::vectorize(const LinComb& e) const {
  if (e.characteristic() != descriptor.p) throw std::invalid_argument("combination of wrong characteristic");
  std::vector<Scalar> v(columns.size(), Scalar::zero(descriptor.p));
  for (const auto& [w, c] : e.terms()) {
    auto it = index.find(w);
    if (it == index.end()) throw std::invalid_argument("word " + w.str() + " is not of multidegree " + descriptor.mdeg.str());
    v[it->second] = c;
  }
  return v;
}

RelationSystem build_system(const SystemDescriptor& d, bool dedup, std::size_t budget) {
  d.validate();
  RelationSystem sys;
  sys.descriptor = d;
  sys.columns = enumerate_words(d.mdeg, budget);
  for (std::uint32_t i = 0; i < sys.columns.size(); ++i) sys.index.emplace(sys.columns[i], i);
  sys.matrix = SparseMatrix(d.p, sys.columns.size());
  std::unordered_set<std::string> seen;
  std::vector<std::pair<std::uint32_t, std::int64_t>> row;
  for_each_instance(
      d,
      [&](const IdentityInstance& inst) {
        row.clear();
        for (const auto& [w, c] : expand_terms(inst, d.n)) row.emplace_back(sys.index.at(w), c);
        std::sort(row.begin(), row.end());
        std::vector<std::pair<std::uint32_t, std::int64_t>> merged;
        for (const auto& [col, c] : row) {
          if (!merged.empty() && merged.back().first == col)
            merged.back().second += c;
          else
            merged.emplace_back(col, c);
        }
        std::vector<std::pair<std::uint32_t, std::int64_t>> norm;
        Scalar scale;
        if (d.p == 0) {
          std::int64_t g = 0;
          for (const auto& [col, c] : merged) g = std::gcd(g, c);
          if (g == 0) return;
          std::int64_t first = 0;
          for (const auto& [col, c] : merged)
            if (c != 0) {
              first = c;
              break;
            }
          if (first < 0) g = -g;
          for (const auto& [col, c] : merged)
            if (c != 0) norm.emplace_back(col, c / g);
          mpq_class inv(mpz_class(g < 0 ? -1 : 1), mpz_class(static_cast<long>(g < 0 ? -g : g)));
          scale = Scalar(inv, 0);
        } else {
          const std::int64_t p = d.p;
          for (const auto& [col, c] : merged) {
            std::int64_t r = ((c % p) + p) % p;
            if (r != 0) norm.emplace_back(col, r);
          }
          if (norm.empty()) return;
          PrimeField f(d.p);
          auto inv = f.inv(static_cast<std::uint32_t>(norm.front().second));
          for (auto& [col, c] : norm) c = f.mul(static_cast<std::uint32_t>(c), inv);
          scale = Scalar(static_cast<std::int64_t>(inv), d.p);
        }
        if (dedup) {
          std::string key;
          key.reserve(norm.size() * 12);
          for (const auto& [col, c] : norm) {
            key.append(reinterpret_cast<const char*>(&col), sizeof col);
            key.append(reinterpret_cast<const char*>(&c), sizeof c);
          }
          if (!seen.insert(std::move(key)).second) return;
        }
        std::vector<SparseMatrix::Entry> entries;
        entries.reserve(norm.size());
        for (const auto& [col, c] : norm) entries.emplace_back(col, Scalar(c, d.p));
        sys.matrix.add_row(std::move(entries));
        sys.provenance.push_back(inst);
        sys.scale.push_back(scale);
      },
      budget);
  return sys;
}

}  // namespace nilcert
