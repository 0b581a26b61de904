#include "nilcert/sigma.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "nilcert/rewrite.hpp"

namespace nilcert {

SigmaSymbol SigmaSymbol::make(int k, const Word& w) {
  if (k < 1) throw std::invalid_argument("sigma index must be positive");
  if (w.empty()) throw std::invalid_argument("sigma of the empty word");
  return {k, cyclic_representative(w)};
}

Multidegree SigmaSymbol::mdeg(std::size_t d) const {
  Multidegree m = nilcert::mdeg(cycle, d);
  std::vector<int> c = m.counts();
  for (int& x : c) x *= k;
  return Multidegree(c);
}

std::string SigmaSymbol::str() const {
  std::string name = k == 1 ? "tr" : "s" + std::to_string(k);
  return name + "(" + cycle.str() + ")";
}

namespace {

SigmaMonomial normalize(SigmaMonomial m) {
  std::sort(m.begin(), m.end());
  SigmaMonomial out;
  for (auto& [s, e] : m) {
    if (!out.empty() && out.back().first == s)
      out.back().second += e;
    else
      out.emplace_back(s, e);
  }
  return out;
}

std::vector<int> add_q(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

}  // namespace

SigmaPoly SigmaPoly::symbol(const SigmaSymbol& s, std::int64_t coeff) {
  SigmaPoly p;
  p.add({{s, 1}}, {}, mpz_class(static_cast<long>(coeff)));
  return p;
}

SigmaPoly SigmaPoly::constant(std::int64_t c) {
  SigmaPoly p;
  p.add({}, {}, mpz_class(static_cast<long>(c)));
  return p;
}

void SigmaPoly::add(const SigmaMonomial& m, const std::vector<int>& q, const mpz_class& c) {
  if (c == 0) return;
  std::vector<int> qq = q;
  while (!qq.empty() && qq.back() == 0) qq.pop_back();
  Key key{normalize(m), std::move(qq)};
  auto [it, inserted] = terms_.emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

SigmaPoly& SigmaPoly::operator+=(const SigmaPoly& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
  return *this;
}

SigmaPoly& SigmaPoly::operator-=(const SigmaPoly& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
  return *this;
}

SigmaPoly& SigmaPoly::operator*=(const mpz_class& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

SigmaPoly operator*(const SigmaPoly& a, const SigmaPoly& b) {
  SigmaPoly out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      SigmaMonomial m = ka.first;
      m.insert(m.end(), kb.first.begin(), kb.first.end());
      out.add(m, add_q(ka.second, kb.second), ca * cb);
    }
  return out;
}

bool SigmaPoly::is_homogeneous() const {
  std::optional<Multidegree> first;
  for (const auto& [k, c] : terms_) {
    Multidegree m;
    for (const auto& [s, e] : k.first)
      for (int i = 0; i < e; ++i) m = m + s.mdeg();
    if (!first)
      first = m;
    else if (!(*first == m))
      return false;
  }
  return true;
}

std::string SigmaPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    mpz_class a = abs(c);
    os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    first = false;
    std::vector<std::string> factors;
    if (a != 1 || (k.first.empty() && k.second.empty())) factors.push_back(a.get_str());
    for (std::size_t i = 0; i < k.second.size(); ++i)
      if (k.second[i] > 0)
        factors.push_back("q" + std::to_string(i + 1) + (k.second[i] > 1 ? "^" + std::to_string(k.second[i]) : ""));
    for (const auto& [s, e] : k.first) factors.push_back(s.str() + (e > 1 ? "^" + std::to_string(e) : ""));
    for (std::size_t i = 0; i < factors.size(); ++i) os << (i ? " " : "") << factors[i];
  }
  return os.str();
}

nlohmann::json to_json(const SigmaPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, c] : p.terms()) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& [s, e] : k.first) factors.push_back({{"k", s.k}, {"cycle", s.cycle.str()}, {"power", e}});
    terms.push_back({{"coeff", c.get_str()}, {"q", k.second}, {"factors", factors}});
  }
  return {{"terms", terms}};
}

SigmaPoly sigma_from_json(const nlohmann::json& j) {
  SigmaPoly p;
  for (const auto& t : j.at("terms")) {
    SigmaMonomial m;
    for (const auto& f : t.at("factors"))
      m.emplace_back(SigmaSymbol::make(f.at("k").get<int>(), Word::parse(f.at("cycle").get<std::string>())),
                     f.at("power").get<int>());
    p.add(m, t.value("q", std::vector<int>{}), mpz_class(t.at("coeff").get<std::string>()));
  }
  return p;
}

SigmaPoly amitsur_expand(int k, const std::vector<Word>& summands) {
  if (k < 1) throw std::invalid_argument("amitsur_expand needs k >= 1");
  const int s = static_cast<int>(summands.size());
  for (const Word& w : summands)
    if (w.empty()) throw std::invalid_argument("summand words must be non-empty");
  SigmaPoly out;
  if (s == 0) return out;
  std::vector<Word> cycles;
  for (int len = 1; len <= k; ++len)
    for (const Word& c : primitive_cycles(s, len)) cycles.push_back(c);
  std::vector<int> j(cycles.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int rest) {
    if (rest == 0) {
      SigmaMonomial m;
      std::vector<int> q(static_cast<std::size_t>(s), 0);
      int jsum = 0;
      for (std::size_t c = 0; c < cycles.size(); ++c) {
        if (j[c] == 0) continue;
        jsum += j[c];
        Word expanded;
        for (std::size_t t = 0; t < cycles[c].size(); ++t) {
          expanded += summands[static_cast<std::size_t>(cycles[c][t] - 1)];
          q[static_cast<std::size_t>(cycles[c][t] - 1)] += j[c];
        }
        m.emplace_back(SigmaSymbol::make(j[c], expanded), 1);
      }
      out.add(m, q, (k - jsum) % 2 == 0 ? 1 : -1);
      return;
    }
    if (i == cycles.size()) return;
    int deg = static_cast<int>(cycles[i].size());
    for (int v = 0; v * deg <= rest; ++v) {
      j[i] = v;
      rec(i + 1, rest - v * deg);
    }
    j[i] = 0;
  };
  rec(0, k);
  return out;
}

NewtonIdentity newton_reduce(NewtonForm form, const Word& u) {
  if (u.empty()) throw std::invalid_argument("newton_reduce needs a non-empty word");
  SigmaPoly t1 = SigmaPoly::symbol(SigmaSymbol::make(1, u));
  SigmaPoly s2 = SigmaPoly::symbol(SigmaSymbol::make(2, u));
  SigmaPoly s3 = SigmaPoly::symbol(SigmaSymbol::make(3, u));
  NewtonIdentity id;
  switch (form) {
    case NewtonForm::TraceOfSquare:
      id.lhs = SigmaPoly::symbol(SigmaSymbol::make(1, u.power(2)));
      id.rhs = t1 * t1 - s2 * mpz_class(2);
      break;
    case NewtonForm::TraceOfCube:
      id.lhs = SigmaPoly::symbol(SigmaSymbol::make(1, u.power(3)));
      id.rhs = t1 * t1 * t1 - t1 * s2 * mpz_class(3) + s3 * mpz_class(3);
      break;
    case NewtonForm::TwiceSigma2:
      id.lhs = s2 * mpz_class(2);
      id.rhs = t1 * t1 - SigmaPoly::symbol(SigmaSymbol::make(1, u.power(2)));
      break;
  }
  return id;
}

std::optional<Word> canonical_rotation(const Word& w) {
  std::optional<Word> best;
  for (std::size_t r = 0; r < std::max<std::size_t>(w.size(), 1); ++r) {
    Word v = w.rotate(r);
    if (is_canonical(v) && (!best || v < *best)) best = v;
  }
  return best;
}

namespace {

class TraceCanon {
 public:
  using Terms = std::vector<std::pair<Word, std::int64_t>>;

  explicit TraceCanon(std::uint32_t p) : p_(p) {}

  const Terms& expand(const Word& w) {
    Word key = cyclic_representative(w);
    auto it = memo_.find(key.bytes());
    if (it != memo_.end()) return it->second;
    Terms out;
    if (auto c = canonical_rotation(key)) {
      out.emplace_back(*c, 1);
      return memo_.emplace(key.bytes(), std::move(out)).first->second;
    }
    active_.insert(key.bytes());
    bool done = false;
    for (std::size_t r = 0; r < key.size() && !done; ++r) {
      auto step = rewrite_step(key.rotate(r));
      if (!step) continue;
      bool bordered = !step->instance.left.empty() || !step->instance.right.empty();
      if (!bordered && p_ != 3) continue;
      bool loops = false;
      for (const auto& [succ, c] : step->successors)
        if (active_.count(cyclic_representative(succ).bytes())) loops = true;
      if (loops) continue;
      std::map<Word, std::int64_t> acc;
      for (const auto& [succ, c] : step->successors)
        for (const auto& [v, k] : expand(succ)) {
          std::int64_t prod;
          if (__builtin_mul_overflow(static_cast<std::int64_t>(c), k, &prod) ||
              __builtin_add_overflow(acc[v], prod, &acc[v]))
            throw std::overflow_error("trace coefficient overflow");
        }
      for (const auto& [v, k] : acc)
        if (k != 0) out.emplace_back(v, k);
      done = true;
    }
    if (!done) {
      out.emplace_back(key, 1);
      irreducible_.insert(key.bytes());
    }
    active_.erase(key.bytes());
    return memo_.emplace(key.bytes(), std::move(out)).first->second;
  }

  bool is_irreducible(const Word& w) const { return irreducible_.count(w.bytes()) > 0; }

 private:
  std::uint32_t p_;
  std::unordered_map<std::string, Terms> memo_;
  std::unordered_set<std::string> active_;
  std::unordered_set<std::string> irreducible_;
};

}  // namespace

TraceForm canonical_trace_form(const LinComb& traces, std::uint32_t p) {
  if (traces.characteristic() != p) throw std::invalid_argument("combination of wrong characteristic");
  TraceCanon canon(p);
  TraceForm out;
  out.traces = LinComb(p);
  out.sigma2 = LinComb(p);
  for (const auto& [w, c] : traces.terms()) {
    if (w.empty()) throw std::invalid_argument("trace of the empty word");
    for (const auto& [v, k] : canon.expand(w)) out.traces.add(v, c * Scalar(k, p));
  }
  for (const auto& [v, c] : out.traces.terms())
    if (canon.is_irreducible(v)) out.complete = false;
  return out;
}

TraceForm canonical_sigma2_form(const Word& u, std::uint32_t p) {
  if (u.empty()) throw std::invalid_argument("s2 of the empty word");
  if (p == 2) {
    if (u.size() == 1) {
      TraceForm out;
      out.traces = LinComb(p);
      out.sigma2 = LinComb::of(u, p);
      return out;
    }
    Word a = u.substr(0, 1), b = u.substr(1);
    return canonical_trace_form(LinComb::of(a.power(2) + b.power(2), p), p);
  }
  LinComb t(p);
  t.add(u.power(2), Scalar(-1, p) / Scalar(2, p));
  return canonical_trace_form(t, p);
}

namespace {

mpz_class bareiss_det(IntMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

}  // namespace

mpz_class charpoly_coefficient(const IntMatrix& m, int k) {
  const int n = static_cast<int>(m.size());
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("matrix is not square");
  if (k < 0 || k > n) throw std::invalid_argument("coefficient index out of range");
  if (k == 0) return 1;
  mpz_class total = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (__builtin_popcount(mask) != k) continue;
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    IntMatrix sub(static_cast<std::size_t>(k), std::vector<mpz_class>(static_cast<std::size_t>(k)));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) sub[i][j] = m[idx[i]][idx[j]];
    total += bareiss_det(sub);
  }
  return total;
}

IntMatrix evaluate_word(const Word& w, const std::map<Letter, IntMatrix>& assignment) {
  if (w.empty()) throw std::invalid_argument("empty word");
  IntMatrix prod;
  for (std::size_t i = 0; i < w.size(); ++i) {
    auto m = assignment.find(w[i]);
    if (m == assignment.end()) throw std::invalid_argument("no matrix for letter x" + std::to_string(w[i]));
    prod = i == 0 ? m->second : multiply(prod, m->second);
  }
  return prod;
}

mpz_class sigma_eval(const SigmaPoly& p, const std::map<Letter, IntMatrix>& assignment,
                     const std::vector<mpz_class>& q_values) {
  std::size_t n = 0;
  for (const auto& [x, m] : assignment) {
    if (n == 0) n = m.size();
    if (m.size() != n) throw std::invalid_argument("matrices of different sizes");
    for (const auto& row : m)
      if (row.size() != n) throw std::invalid_argument("matrix is not square");
  }
  std::map<SigmaSymbol, mpz_class> cache;
  auto value = [&](const SigmaSymbol& s) -> mpz_class {
    auto it = cache.find(s);
    if (it != cache.end()) return it->second;
    if (s.k > static_cast<int>(n)) throw std::invalid_argument("symbol " + s.str() + " exceeds the matrix size");
    return cache[s] = charpoly_coefficient(evaluate_word(s.cycle, assignment), s.k);
  };
  mpz_class total = 0;
  for (const auto& [key, c] : p.terms()) {
    mpz_class t = c;
    for (std::size_t l = 0; l < key.second.size(); ++l) {
      if (key.second[l] == 0) continue;
      if (l >= q_values.size()) throw std::invalid_argument("missing value for q" + std::to_string(l + 1));
      mpz_class qp;
      mpz_pow_ui(qp.get_mpz_t(), q_values[l].get_mpz_t(), static_cast<unsigned long>(key.second[l]));
      t *= qp;
    }
    for (const auto& [s, e] : key.first) {
      mpz_class v = value(s), vp;
      mpz_pow_ui(vp.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(e));
      t *= vp;
    }
    total += t;
  }
  return total;
}

}  // namespace nilcert
