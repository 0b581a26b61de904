#include "nilcert/nil_oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "nilcert/rewrite.hpp"
#include "nilcert/sparse.hpp"

namespace nilcert {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Zero: return "zero";
    case Outcome::Nonzero: return "nonzero";
    default: return "undecided";
  }
}

namespace {

struct StopStreaming {};

std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("coefficient overflow");
  return r;
}

// S_Lambda restricted to canonical words: every word is replaced by its
// rewriting normal form, so columns are the canonical words only.
template <class F>
class Solver {
 public:
  using Elem = typename F::Elem;
  using Row = typename Eliminator<F>::Row;

  Solver(const SystemDescriptor& d, F f, bool track, std::size_t budget)
      : d_(d), f_(f), canon_(0, d.n), budget_(budget), acc_(f, 0) {
    if (word_count(d.mdeg) > budget)
      throw BudgetExceeded("component " + d.mdeg.str() + " exceeds the column budget " + std::to_string(budget));
    for_each_word(d.mdeg, [&](const Word& w) {
      ++words_;
      canon_.expand(w);
    });
    el_.emplace(f, canon_.canonical_count(), track);
    acc_.resize(canon_.canonical_count());
  }

  void solve() {
    try {
      for_each_instance(
          d_,
          [&](const IdentityInstance& inst) {
            if (el_->full_rank()) throw StopStreaming{};
            ++rows_;
            Row r = row_of(inst);
            if (!r.empty() && el_->insert(r)) sources_.push_back(inst);
          },
          budget_);
    } catch (const StopStreaming&) {
    }
  }

  Row row_of(const IdentityInstance& inst) {
    for (const auto& [w, k] : expand_terms(inst, d_.n))
      for (const auto& [id, v] : canon_.expand(w)) acc_.add(id, f_.from_int(mul_checked(k, v)));
    return acc_.take();
  }

  Row row_of(const LinComb& e) {
    for (const auto& [w, c] : e.terms()) {
      Elem ce = f_.from_scalar(c);
      for (const auto& [id, v] : canon_.expand(w)) acc_.add(id, f_.mul(ce, f_.from_int(v)));
    }
    return acc_.take();
  }

  ComponentReport report() const {
    ComponentReport r;
    r.system = d_;
    r.words = words_;
    r.columns = canon_.canonical_count();
    r.rows = rows_;
    r.rank = el_->rank();
    return r;
  }

  // target = sum over rows, from the tracked combination plus the rewriting steps
  ZeroCertificate zero_certificate(const LinComb& target, const Row& combo) {
    const std::uint32_t p = d_.p;
    ZeroCertificate z;
    LinComb mu = target;
    for (const auto& [s, b] : combo) {
      Scalar sb = f_.to_scalar(b);
      z.rows.emplace_back(sources_[s], sb);
      mu -= expand_identity(sources_[s], p, d_.n) * sb;
    }
    derive(mu, z.rows);
    compact(z);
    return z;
  }

  // functional on all words extending the null vector at a free column
  NonzeroWitness witness(std::uint32_t free_col, const LinComb& target) {
    std::vector<Elem> nv = el_->null_vector(free_col);
    NonzeroWitness w;
    for_each_word(d_.mdeg, [&](const Word& u) {
      Elem v = f_.zero();
      for (const auto& [id, c] : canon_.expand(u)) v = f_.add(v, f_.mul(f_.from_int(c), nv[id]));
      if (!f_.is_zero(v)) w.functional.emplace_back(u, f_.to_scalar(v));
    });
    Elem value = f_.zero();
    for (const auto& [u, c] : target.terms())
      for (const auto& [id, k] : canon_.expand(u)) value = f_.add(value, f_.mul(f_.from_scalar(c), f_.mul(f_.from_int(k), nv[id])));
    w.value = f_.to_scalar(value);
    return w;
  }

  ComponentZeroCertificate component_certificate() {
    ComponentZeroCertificate cz;
    for_each_word(d_.mdeg, [&](const Word& u) {
      if (const RewriteStep* st = canon_.step(u)) cz.steps.push_back({u, st->instance, st->successors});
    });
    for (std::uint32_t c = 0; c < canon_.canonical_count(); ++c) {
      const Row& row = el_->pivot_row(c);
      if (row.size() != 1 || row.front().first != c) throw std::logic_error("full-rank pivot row is not a unit vector");
      std::vector<std::pair<IdentityInstance, Scalar>> rows;
      for (const auto& [s, b] : el_->combination(c)) rows.emplace_back(sources_[s], f_.to_scalar(b));
      cz.spans.emplace_back(canon_.canonical_word(c), std::move(rows));
    }
    return cz;
  }

  Eliminator<F>& eliminator() { return *el_; }
  Canonicalizer& canon() { return canon_; }
  const F& field() const { return f_; }

 private:
  // mu has zero normal form; write it through rewriting steps, deepest first
  void derive(const LinComb& mu, std::vector<std::pair<IdentityInstance, Scalar>>& out) {
    const std::uint32_t p = d_.p;
    using Key = std::pair<int, Word>;
    std::map<Key, Scalar, std::greater<Key>> pending;
    auto push = [&](const Word& w, const Scalar& c) {
      Key key{canon_.depth(w), w};
      auto [it, inserted] = pending.emplace(key, c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) pending.erase(it);
      }
    };
    for (const auto& [w, c] : mu.terms()) push(w, c);
    while (!pending.empty() && pending.begin()->first.first > 0) {
      auto it = pending.begin();
      Word u = it->first.second;
      Scalar m = it->second;
      pending.erase(it);
      const RewriteStep* st = canon_.step(u);
      out.emplace_back(st->instance, m);
      for (const auto& [succ, k] : st->successors) push(succ, m * Scalar(k, p));
    }
    if (!pending.empty()) throw std::logic_error("residue left after backward derivation");
  }

  SystemDescriptor d_;
  F f_;
  Canonicalizer canon_;
  std::size_t budget_;
  std::size_t words_ = 0;
  std::size_t rows_ = 0;
  std::optional<Eliminator<F>> el_;
  std::vector<IdentityInstance> sources_;
  Accumulator<F> acc_;
};

bool has_large_part(const Multidegree& m) {
  for (int c : m.counts())
    if (c >= 4) return true;
  return false;
}

}  // namespace

nlohmann::json to_json(const NilDecision& d) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["target"] = d.target.str();
  j["system"] = d.system.mdeg.total() > 0 ? to_json(d.system) : nlohmann::json(nullptr);
  j["outcome"] = outcome_name(d.outcome);
  j["is_zero"] = d.is_zero();
  if (!d.note.empty()) j["note"] = d.note;
  j["certificate"] = d.certificate ? to_json(*d.certificate) : nlohmann::json(nullptr);
  return j;
}

struct ComponentSolver::Impl {
  virtual ~Impl() = default;
  virtual void test(const LinComb& e, NilDecision& out) = 0;
  virtual ComponentReport report() const = 0;
};

namespace {

template <class F>
struct SolverImpl : ComponentSolver::Impl {
  Solver<F> s;
  bool certify;

  SolverImpl(const SystemDescriptor& d, F f, const SolveOptions& opts) : s(d, f, opts.certify, opts.budget), certify(opts.certify) {
    s.solve();
  }

  void test(const LinComb& e, NilDecision& out) override {
    typename Solver<F>::Row combo;
    auto res = s.eliminator().reduce(s.row_of(e), certify ? &combo : nullptr);
    if (res.empty()) {
      out.outcome = Outcome::Zero;
      if (certify) out.certificate = Certificate{out.system, e, s.zero_certificate(e, combo)};
    } else {
      out.outcome = Outcome::Nonzero;
      if (certify) {
        NonzeroWitness w = s.witness(res.front().first, e);
        if (w.value.is_zero()) throw std::logic_error("witness vanishes on the target");
        out.certificate = Certificate{out.system, e, std::move(w)};
      }
    }
  }

  ComponentReport report() const override { return s.report(); }
};

}  // namespace

ComponentSolver::ComponentSolver(const SystemDescriptor& d, const SolveOptions& opts) : d_(d) {
  d.validate();
  impl_ = with_field(d.p, [&](auto f) -> std::unique_ptr<Impl> {
    return std::make_unique<SolverImpl<decltype(f)>>(d, f, opts);
  });
}

ComponentSolver::~ComponentSolver() = default;
ComponentSolver::ComponentSolver(ComponentSolver&&) noexcept = default;
ComponentSolver& ComponentSolver::operator=(ComponentSolver&&) noexcept = default;

ComponentReport ComponentSolver::report() const { return impl_->report(); }

NilDecision ComponentSolver::test(const LinComb& e) {
  NilDecision out;
  out.system = d_;
  out.target = e;
  if (e.is_zero()) {
    out.outcome = Outcome::Zero;
    out.note = "the target is the zero combination";
    out.certificate = Certificate{d_, e, ZeroCertificate{}};
    return out;
  }
  if (!e.is_homogeneous()) throw std::invalid_argument("zero_test needs a homogeneous combination");
  if (e.characteristic() != d_.p) throw std::invalid_argument("combination of wrong characteristic");
  if (!(e.mdeg() == d_.mdeg)) throw std::invalid_argument("combination outside the component " + d_.mdeg.str());
  try {
    impl_->test(e, out);
  } catch (const std::overflow_error& ex) {
    out.outcome = Outcome::Undecided;
    out.certificate.reset();
    out.note = ex.what();
  }
  return out;
}

NilDecision zero_test_in(const SystemDescriptor& d, const LinComb& e, const SolveOptions& opts) {
  NilDecision out;
  out.system = d;
  out.target = e;
  if (e.is_zero()) {
    out.outcome = Outcome::Zero;
    out.note = "the target is the zero combination";
    if (d.mdeg.total() > 0) out.certificate = Certificate{d, e, ZeroCertificate{}};
    return out;
  }
  if (!e.is_homogeneous()) throw std::invalid_argument("zero_test needs a homogeneous combination");
  if (e.characteristic() != d.p) throw std::invalid_argument("combination of wrong characteristic");
  if (!(e.mdeg() == d.mdeg)) throw std::invalid_argument("combination outside the component " + d.mdeg.str());
  try {
    ComponentSolver solver(d, opts);
    return solver.test(e);
  } catch (const BudgetExceeded& ex) {
    out.note = ex.what();
  } catch (const std::overflow_error& ex) {
    out.note = ex.what();
  }
  out.outcome = Outcome::Undecided;
  return out;
}

NilDecision zero_test(const LinComb& e, std::uint32_t p, int n, const SolveOptions& opts) {
  SystemDescriptor d;
  d.p = p;
  d.n = n;
  d.mdeg = e.is_zero() ? Multidegree() : e.mdeg();
  d.cyclic = false;
  return zero_test_in(d, e, opts);
}

ComponentReport component_dimension(const SystemDescriptor& d, std::size_t budget) {
  d.validate();
  return with_field(d.p, [&](auto f) {
    Solver<decltype(f)> s(d, f, false, budget);
    s.solve();
    return s.report();
  });
}

std::size_t component_dimension(const Multidegree& m, std::uint32_t p, int n) {
  SystemDescriptor d;
  d.p = p;
  d.n = n;
  d.mdeg = m;
  return component_dimension(d).dimension();
}

nlohmann::json to_json(const ComponentDecision& c) {
  nlohmann::json j;
  j["mdeg"] = c.system.mdeg.counts();
  j["outcome"] = outcome_name(c.outcome);
  j["route"] = c.route;
  j["words"] = c.report.words;
  j["canonical_words"] = c.report.columns;
  j["rank"] = c.report.rank;
  if (c.nonzero_word) j["nonzero_word"] = c.nonzero_word->str();
  return j;
}

ComponentDecision decide_component(const SystemDescriptor& d, const SolveOptions& opts) {
  d.validate();
  ComponentDecision out;
  out.system = d;
  out.report.system = d;
  constexpr std::size_t kStructuralCertificateWords = 100'000;
  if (d.n == 3 && has_large_part(d.mdeg) &&
      (!opts.certify || word_count(d.mdeg) > std::min(opts.budget, kStructuralCertificateWords))) {
    // no canonical word has a letter of degree >= 4
    out.outcome = Outcome::Zero;
    out.route = "structural";
    return out;
  }
  try {
    with_field(d.p, [&](auto f) {
      Solver<decltype(f)> s(d, f, opts.certify, opts.budget);
      s.solve();
      out.report = s.report();
      out.route = out.report.columns == 0 ? "structural" : "solve";
      if (s.eliminator().full_rank()) {
        out.outcome = Outcome::Zero;
        if (opts.certify) out.certificate = Certificate{d, LinComb(d.p), s.component_certificate()};
      } else {
        out.outcome = Outcome::Nonzero;
        std::uint32_t col = s.eliminator().free_columns().front();
        Word w = s.canon().canonical_word(col);
        out.nonzero_word = w;
        if (opts.certify) {
          LinComb target = LinComb::of(w, d.p);
          out.certificate = Certificate{d, target, s.witness(col, target)};
        }
      }
      return 0;
    });
  } catch (const BudgetExceeded& ex) {
    out.outcome = Outcome::Undecided;
    out.route = "budget";
  }
  return out;
}

// -- functionals -------------------------------------------------------------

const char* functional_name(FunctionalName f) {
  switch (f) {
    case FunctionalName::Degree32: return "DEGREE_3_2";
    case FunctionalName::SubwordCountF: return "SUBWORD_COUNT_F";
    case FunctionalName::ParityPlus: return "PARITY_PLUS";
    default: return "PARITY_MINUS";
  }
}

FunctionalName functional_from_name(const std::string& name) {
  for (FunctionalName f : {FunctionalName::Degree32, FunctionalName::SubwordCountF, FunctionalName::ParityPlus,
                           FunctionalName::ParityMinus})
    if (name == functional_name(f)) return f;
  throw std::invalid_argument("unknown functional '" + name + "'");
}

namespace {

int permutation_sign(const Word& w) {
  int inversions = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (w[i] > w[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

const std::map<Word, int>& degree32_table() {
  static const std::map<Word, int> table = {
      {Word({1, 1, 2, 2, 1}), 1},  {Word({1, 2, 2, 1, 1}), -1}, {Word({1, 1, 2, 1, 2}), -1},
      {Word({2, 1, 2, 1, 1}), 1},  {Word({1, 2, 1, 1, 2}), 1},  {Word({2, 1, 1, 2, 1}), -1},
  };
  return table;
}

}  // namespace

std::int64_t ExplicitFunctional::value(const Word& w) const {
  switch (name) {
    case FunctionalName::Degree32: {
      auto it = degree32_table().find(w);
      return it == degree32_table().end() ? 0 : it->second;
    }
    case FunctionalName::SubwordCountF: {
      std::int64_t count = 0;
      for (std::size_t i = 0; i + 1 < w.size(); ++i)
        if (w[i] == 1 && w[i + 1] == 1) ++count;
      return count;
    }
    case FunctionalName::ParityPlus: return permutation_sign(w) == 1 ? 1 : 0;
    default: return permutation_sign(w) == -1 ? 1 : 0;
  }
}

std::vector<std::uint32_t> ExplicitFunctional::characteristics() const {
  switch (name) {
    case FunctionalName::Degree32: return {};
    case FunctionalName::SubwordCountF: return {2};
    default: return {3};
  }
}

ExplicitFunctional make_functional(FunctionalName name, const Multidegree& m) {
  auto bad = [&](const std::string& what) {
    return std::invalid_argument(std::string(functional_name(name)) + " " + what + ", got " + m.str());
  };
  switch (name) {
    case FunctionalName::Degree32:
      if (!(m == Multidegree{3, 2})) throw bad("is defined on multidegree (3,2)");
      break;
    case FunctionalName::SubwordCountF: {
      bool ok = m.letters() >= 2 && m[0] == 3;
      for (std::size_t i = 1; i < m.letters(); ++i) ok = ok && m[i] == 1;
      if (!ok) throw bad("is defined on multidegrees (3,1,...,1)");
      break;
    }
    default:
      if (m.total() == 0 || !m.is_multilinear() || m.letters() != static_cast<std::size_t>(m.total()))
        throw bad("is defined on multilinear multidegrees (1,...,1)");
  }
  return {name, m};
}

bool verify_functional(const ExplicitFunctional& f, std::uint32_t p, std::string* why) {
  SystemDescriptor d;
  d.p = p;
  d.mdeg = f.mdeg;
  d.validate();
  std::unordered_map<std::string, std::int64_t> values;
  for_each_word(f.mdeg, [&](const Word& w) { values.emplace(w.bytes(), f.value(w)); });
  const std::int64_t mod = p;
  bool ok = true;
  try {
    for_each_instance(d, [&](const IdentityInstance& inst) {
      std::int64_t s = 0;
      for (const auto& [w, k] : expand_terms(inst)) s += k * values.at(w.bytes());
      if (mod == 0 ? s != 0 : s % mod != 0) {
        if (why) *why = "row " + inst.str() + " evaluates to " + std::to_string(s);
        ok = false;
        throw StopStreaming{};
      }
    });
  } catch (const StopStreaming&) {
  }
  return ok;
}

Scalar evaluate(const ExplicitFunctional& f, const LinComb& e) {
  Scalar s = Scalar::zero(e.characteristic());
  for (const auto& [w, c] : e.terms()) {
    if (!(mdeg(w) == f.mdeg)) throw std::invalid_argument("word " + w.str() + " outside the functional's multidegree");
    s += c * Scalar(f.value(w), e.characteristic());
  }
  return s;
}

Certificate functional_certificate(const ExplicitFunctional& f, std::uint32_t p, const LinComb& target) {
  Certificate c;
  c.system.p = p;
  c.system.mdeg = f.mdeg;
  c.target = target;
  NonzeroWitness w;
  for_each_word(f.mdeg, [&](const Word& u) {
    Scalar v(f.value(u), p);
    if (!v.is_zero()) w.functional.emplace_back(u, v);
  });
  w.value = evaluate(f, target);
  c.body = std::move(w);
  return c;
}

Word w_word(Letter x, Letter y) { return Word({x, x, y, y, x, y}); }

ParityChain parity_chain(int k) {
  if (k < 1 || 2 * k > kMaxLetter) throw std::invalid_argument("parity chain needs k >= 1");
  ParityChain c;
  c.k = k;
  LinComb expected = LinComb::of(Word(), 3);
  for (int t = 1; t <= k; ++t) {
    c.word += w_word(2 * t - 1, 2 * t);
    expected = expected * LinComb::parse("x" + std::to_string(2 * t - 1) + " x" + std::to_string(2 * t) + " - x" +
                                             std::to_string(2 * t) + " x" + std::to_string(2 * t - 1),
                                         3);
  }
  c.expected = expected;
  LinComb image = LinComb::of(c.word, 3);
  for (Letter x = 2 * k; x >= 1; --x) image = pi_operator(image, x);
  c.image = image;
  std::vector<int> ones(static_cast<std::size_t>(2 * k), 1);
  ExplicitFunctional plus = make_functional(FunctionalName::ParityPlus, Multidegree(ones));
  ExplicitFunctional minus = make_functional(FunctionalName::ParityMinus, Multidegree(ones));
  c.functionals_ok = verify_functional(plus, 3) && verify_functional(minus, 3);
  c.plus_value = evaluate(plus, expected);
  c.minus_value = evaluate(minus, expected);
  return c;
}

nlohmann::json to_json(const ParityChain& c) {
  return {{"k", c.k},
          {"word", c.word.str()},
          {"image", c.image.str()},
          {"image_matches", c.image == c.expected},
          {"functionals_verified", c.functionals_ok},
          {"plus_value", c.plus_value.to_string()},
          {"minus_value", c.minus_value.to_string()}};
}

// -- nilpotency degree -------------------------------------------------------

std::vector<int> expected_c(int d, std::uint32_t p) {
  if (d < 1) throw std::invalid_argument("d must be positive");
  if (d == 1) return {3};
  if (p == 2) return {d >= 3 ? d + 3 : 6};
  if (p == 3) {
    if (d % 2 == 0) return {3 * d + 1};
    return {3 * d, 3 * d + 1};
  }
  return {6};
}

std::vector<Multidegree> sorted_multidegrees(int len, int d) {
  std::vector<Multidegree> out;
  std::vector<int> parts;
  std::function<void(int, int)> rec = [&](int rest, int maxpart) {
    if (rest == 0) {
      out.emplace_back(parts);
      return;
    }
    if (static_cast<int>(parts.size()) == d) return;
    for (int v = std::min(rest, maxpart); v >= 1; --v) {
      parts.push_back(v);
      rec(rest - v, v);
      parts.pop_back();
    }
  };
  if (len > 0 && d > 0) rec(len, len);
  std::stable_partition(out.begin(), out.end(), [](const Multidegree& m) { return !has_large_part(m); });
  return out;
}

namespace {

Word subword_count_word(int d) {
  Word w({1, 1});
  for (Letter x = 2; x <= d; ++x) w.push_back(x);
  w.push_back(1);
  return w;
}

}  // namespace

NilpotencyResult nilpotency_degree(int d, std::uint32_t p, int n, const SolveOptions& opts) {
  if (d < 1) throw std::invalid_argument("nilpotency degree needs d >= 1");
  if (!valid_characteristic(p)) throw std::invalid_argument("characteristic must be 0 or a prime");
  if (n != 2 && n != 3) throw std::invalid_argument("nil exponent must be 2 or 3");
  NilpotencyResult r;
  r.d = d;
  r.p = p;
  r.n = n;
  int longest = 1;
  r.longest_nonzero = Word({1});
  r.lower_route = "letter";
  if (n == 3 && d >= 2) {
    ExplicitFunctional s3 = make_functional(FunctionalName::Degree32, Multidegree{3, 2});
    if (verify_functional(s3, p)) {
      longest = 5;
      r.longest_nonzero = Word({1, 1, 2, 2, 1});
      r.lower_route = "functional:DEGREE_3_2";
      r.lower_certificate = functional_certificate(s3, p, LinComb::of(*r.longest_nonzero, p));
    }
    if (p == 2 && d + 2 > longest) {
      std::vector<int> m(static_cast<std::size_t>(d), 1);
      m[0] = 3;
      ExplicitFunctional fc = make_functional(FunctionalName::SubwordCountF, Multidegree(m));
      if (verify_functional(fc, p)) {
        longest = d + 2;
        r.longest_nonzero = subword_count_word(d);
        r.lower_route = "functional:SUBWORD_COUNT_F";
        r.lower_certificate = functional_certificate(fc, p, LinComb::of(*r.longest_nonzero, p));
      }
    }
    int k = std::min(d / 2, 3);
    if (p == 3 && k >= 1 && 6 * k > longest) {
      ParityChain chain = parity_chain(k);
      if (chain.ok()) {
        longest = 6 * k;
        r.longest_nonzero = chain.word;
        r.lower_route = "pi_parity";
        std::vector<int> ones(static_cast<std::size_t>(2 * k), 1);
        r.lower_certificate =
            functional_certificate(make_functional(FunctionalName::ParityPlus, Multidegree(ones)), 3, chain.expected);
        r.chain = std::move(chain);
      }
    }
    // w_{2k} x^2 != 0 for a further letter x: setting x = 1 in an identity
    // of degree 2 in x gives an identity, and would kill w_{2k}
    if (p == 3 && r.chain && d >= 2 * k + 1 && 6 * k + 2 > longest) {
      longest = 6 * k + 2;
      Letter x = static_cast<Letter>(2 * k + 1);
      r.longest_nonzero = r.chain->word + Word{x, x};
      r.lower_route = "pi_parity_square";
    }
  }
  for (int len = longest + 1;; ++len) {
    std::vector<ComponentDecision> level;
    bool nonzero = false, undecided = false;
    for (const Multidegree& m : sorted_multidegrees(len, d)) {
      SystemDescriptor sd;
      sd.p = p;
      sd.n = n;
      sd.mdeg = m;
      ComponentDecision c = decide_component(sd, opts);
      if (c.outcome == Outcome::Nonzero) {
        longest = len;
        r.longest_nonzero = c.nonzero_word;
        r.lower_route = "solve";
        r.lower_certificate = c.certificate;
        r.chain.reset();
        nonzero = true;
        level.push_back(std::move(c));
        break;
      }
      if (c.outcome == Outcome::Undecided) undecided = true;
      level.push_back(std::move(c));
    }
    r.components = std::move(level);
    if (nonzero) continue;
    r.lower = longest + 1;
    if (undecided)
      r.upper = n == 3 ? 3 * d + 1 : 0;
    else
      r.upper = len;
    return r;
  }
}

nlohmann::json to_json(const NilpotencyResult& r, bool with_certificates) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["d"] = r.d;
  j["char"] = r.p;
  j["n"] = r.n;
  j["exact"] = r.exact();
  if (r.exact())
    j["value"] = r.lower;
  else
    j["value"] = nullptr;
  j["lower"] = r.lower;
  j["upper"] = r.upper == 0 ? nlohmann::json(nullptr) : nlohmann::json(r.upper);
  j["lower_route"] = r.lower_route;
  if (r.longest_nonzero) j["longest_nonzero_word"] = r.longest_nonzero->str();
  if (r.chain) j["chain"] = to_json(*r.chain);
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : r.components) {
    nlohmann::json cj = to_json(c);
    if (with_certificates && c.certificate) cj["certificate"] = to_json(*c.certificate);
    comps.push_back(cj);
  }
  j["components"] = comps;
  if (with_certificates && r.lower_certificate) j["lower_certificate"] = to_json(*r.lower_certificate);
  return j;
}

}  // namespace nilcert
