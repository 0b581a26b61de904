#include "nilcert/decomp.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "nilcert/sigma.hpp"

namespace nilcert {

const char* decomposability_name(Decomposability d) {
  switch (d) {
    case Decomposability::Decomposable: return "decomposable";
    case Decomposability::Indecomposable: return "indecomposable";
    default: return "indeterminate";
  }
}

TraceCombination TraceCombination::of(const Word& u, std::uint32_t p) {
  if (u.empty()) throw std::invalid_argument("trace of the empty word");
  return {LinComb::of(u, p)};
}

std::string TraceCombination::str() const {
  if (terms.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : terms.terms()) {
    std::string coeff = c.to_string();
    bool neg = !coeff.empty() && coeff[0] == '-';
    if (neg) coeff = coeff.substr(1);
    if (out.empty())
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    if (coeff != "1") out += coeff + " ";
    out += "tr(" + w.str() + ")";
  }
  return out;
}

nlohmann::json to_json(const DecompDecision& d, bool with_certificate) {
  nlohmann::json j;
  j["expression"] = d.expression;
  j["multidegree"] = d.mdeg.counts();
  j["decision"] = decomposability_name(d.decision);
  j["route"] = d.route;
  j["validity"] = d.validity;
  if (!d.note.empty()) j["note"] = d.note;
  if (d.basis) {
    nlohmann::json b;
    b["target"] = d.basis->target.str();
    b["system"] = to_json(d.basis->system);
    b["outcome"] = outcome_name(d.basis->outcome);
    if (with_certificate && d.basis->certificate) b["certificate"] = to_json(*d.basis->certificate);
    j["basis"] = b;
  }
  return j;
}

DecompOracle::DecompOracle(std::uint32_t p, SolveOptions opts) : p_(p), opts_(opts) {
  if (!valid_characteristic(p)) throw std::invalid_argument("characteristic must be 0 or a prime");
}

NilDecision DecompOracle::zero_test(const LinComb& e, bool cyclic) {
  if (e.is_zero()) return nilcert::zero_test(e, p_, 3, opts_);
  SystemDescriptor d;
  d.p = p_;
  d.mdeg = e.mdeg();
  d.cyclic = cyclic;
  std::string key = to_json(d).dump();
  NilDecision out;
  out.system = d;
  out.target = e;
  if (over_budget_.count(key)) {
    out.note = "component over budget";
    return out;
  }
  auto it = solvers_.find(key);
  if (it == solvers_.end()) {
    try {
      it = solvers_.emplace(key, std::make_unique<ComponentSolver>(d, opts_)).first;
    } catch (const BudgetExceeded& ex) {
      over_budget_[key] = true;
      out.note = ex.what();
      return out;
    } catch (const std::overflow_error& ex) {
      over_budget_[key] = true;
      out.note = ex.what();
      return out;
    }
  }
  return it->second->test(e);
}

namespace {

DecompDecision start(const std::string& expr, const Multidegree& m, const std::string& route) {
  DecompDecision d;
  d.expression = expr;
  d.mdeg = m;
  d.route = route;
  return d;
}

Decomposability from_zero_test(Outcome o) {
  switch (o) {
    case Outcome::Zero: return Decomposability::Decomposable;
    case Outcome::Nonzero: return Decomposability::Indecomposable;
    default: return Decomposability::Indeterminate;
  }
}

std::optional<Letter> degree_one_letter(const Multidegree& m) {
  for (std::size_t i = 0; i < m.letters(); ++i)
    if (m[i] == 1) return static_cast<Letter>(i + 1);
  return std::nullopt;
}

}  // namespace

DecompDecision DecompOracle::trace_decomposable_p3(const TraceCombination& c) {
  if (p_ != 3 || c.characteristic() != 3) throw std::invalid_argument("the trace criterion holds only at p = 3");
  DecompDecision d = start(c.str(), c.terms.is_zero() ? Multidegree() : c.mdeg(), "p3-criterion");
  d.validity = "complete";
  d.basis = zero_test(c.terms, true);
  d.decision = from_zero_test(d.basis->outcome);
  if (!d.decided()) d.note = d.basis->note;
  return d;
}

DecompDecision DecompOracle::lemma3_reduce(const TraceCombination& c) {
  if (c.characteristic() != p_) throw std::invalid_argument("combination of wrong characteristic");
  if (c.terms.is_zero()) throw std::invalid_argument("lemma3_reduce needs a non-zero combination");
  Multidegree m = c.mdeg();
  auto x = degree_one_letter(m);
  if (!x) throw std::invalid_argument("no letter of degree 1 in " + m.str());
  DecompDecision d = start(c.str(), m, "lemma3");
  d.validity = "complete";
  if (m.total() == 1) {
    d.decision = Decomposability::Indecomposable;
    d.note = "a single letter is nonzero in N";
    return d;
  }
  LinComb g(p_);
  for (const auto& [w, a] : c.terms.terms()) {
    std::size_t pos = 0;
    while (w[pos] != *x) ++pos;
    Word r = w.rotate(pos + 1);
    g.add(r.substr(0, r.size() - 1), a);
  }
  d.basis = zero_test(g);
  d.decision = from_zero_test(d.basis->outcome);
  d.note = "tr(G x" + std::to_string(*x) + ") with G = " + g.str();
  if (!d.decided()) d.note += "; " + d.basis->note;
  return d;
}

DecompDecision DecompOracle::lemma3_vanishing(const Word& u) {
  DecompDecision d = start("tr(" + u.str() + ")", mdeg(u), "lemma3");
  std::set<Word> seen;
  for (std::size_t r = 0; r < u.size(); ++r) {
    Word rot = u.rotate(r);
    if (!seen.insert(rot).second || rot.size() < 2) continue;
    Word g = rot.substr(0, rot.size() - 1);
    NilDecision z = zero_test(LinComb::of(g, p_));
    if (z.outcome == Outcome::Zero) {
      d.decision = Decomposability::Decomposable;
      d.note = "G = " + g.str() + " vanishes in N";
      d.basis = std::move(z);
      return d;
    }
  }
  d.note = "no rotation G X with G = 0";
  return d;
}

DecompDecision DecompOracle::lemma5_reduce(const Word& g, Letter x) {
  if (g.contains(x)) throw std::invalid_argument("G must not contain x" + std::to_string(x));
  Word xw{x};
  Word target = g + xw + xw;
  DecompDecision d = start("tr(" + target.str() + ")", mdeg(target), "lemma5");
  LinComb e(p_);
  e.add(g + xw, 1);
  e.add(xw + g, 1);
  d.validity = p_ == 2 ? "sufficient" : "complete";
  d.basis = zero_test(e);
  d.note = "gx + xg = " + e.str();
  switch (d.basis->outcome) {
    case Outcome::Nonzero: d.decision = Decomposability::Indecomposable; break;
    case Outcome::Zero:
      d.decision = p_ == 2 ? Decomposability::Indeterminate : Decomposability::Decomposable;
      if (p_ == 2) d.note += " vanishes, which decides nothing at p = 2";
      break;
    default: d.note += "; " + d.basis->note;
  }
  return d;
}

DecompDecision DecompOracle::lemma6_reduce(const Word& u, const Word& v, Letter x) {
  if (u.contains(x) || v.contains(x)) throw std::invalid_argument("U and V must not contain x" + std::to_string(x));
  Word xw{x}, x2 = xw.power(2);
  Word target = x2 + u + xw + v;
  DecompDecision d = start("tr(" + target.str() + ")", mdeg(target), "lemma6");
  LinComb e(p_);
  if (!u.empty() && !v.empty()) {
    e.add(u + x2 + v, 1);
    e.add(v + x2 + u, -2);
    e.add(x2 + u + v, -1);
    e.add(u + v + x2, -1);
  } else {
    e.add(v + x2 + u, 1);
    e.add(u + xw + v + xw, 1);
    e.add(xw + u + xw + v, 1);
  }
  d.validity = p_ == 3 ? "sufficient" : "complete";
  d.basis = zero_test(e);
  d.note = "test element " + e.str();
  switch (d.basis->outcome) {
    case Outcome::Nonzero: d.decision = Decomposability::Indecomposable; break;
    case Outcome::Zero:
      d.decision = p_ == 3 ? Decomposability::Indeterminate : Decomposability::Decomposable;
      if (p_ == 3) d.note += " vanishes, which decides nothing at p = 3";
      break;
    default: d.note += "; " + d.basis->note;
  }
  return d;
}

DecompDecision DecompOracle::decide_word(const Word& w) {
  const Multidegree m = mdeg(w);
  const std::string expr = "tr(" + w.str() + ")";
  if (degree_one_letter(m)) return lemma3_reduce(TraceCombination::of(w, p_));
  if (p_ == 2 && w.size() % 2 == 0 && w.substr(0, w.size() / 2).power(2) == w) {
    DecompDecision d = start(expr, m, "newton");
    d.decision = Decomposability::Decomposable;
    d.validity = "complete";
    d.note = "tr(V^2) = tr(V)^2 - 2 s2(V)";
    return d;
  }
  if (m.letters() == 1 && w.size() == 3 && p_ != 3) {
    DecompDecision d = start(expr, m, "lemma7");
    d.decision = elementary_independent(3, p_) ? Decomposability::Indecomposable : Decomposability::Indeterminate;
    d.validity = "complete";
    d.note = "tr(X^3) = 3 det(X) modulo decomposables, det(X) indecomposable";
    return d;
  }
  DecompDecision last = lemma3_vanishing(w);
  if (last.decided()) return last;
  for (Letter x = 1; x <= static_cast<Letter>(m.letters()); ++x) {
    if (m.of(x) != 2) continue;
    for (std::size_t r = 0; r < w.size(); ++r) {
      Word rot = w.rotate(r);
      std::size_t n = rot.size();
      if (rot[n - 1] != x || rot[n - 2] != x) continue;
      DecompDecision d = lemma5_reduce(rot.substr(0, n - 2), x);
      d.expression = expr;
      if (d.decided()) return d;
      last = d;
      break;
    }
  }
  for (Letter x = 1; x <= static_cast<Letter>(m.letters()); ++x) {
    if (m.of(x) != 3) continue;
    for (std::size_t r = 0; r < w.size(); ++r) {
      Word rot = w.rotate(r);
      if (rot[0] != x || rot[1] != x) continue;
      std::size_t j = 2;
      while (rot[j] != x) ++j;
      DecompDecision d = lemma6_reduce(rot.substr(2, j - 2), rot.substr(j + 1), x);
      d.expression = expr;
      if (d.decided()) return d;
      last = d;
      break;
    }
  }
  last.expression = expr;
  last.decision = Decomposability::Indeterminate;
  return last;
}

DecompDecision DecompOracle::decide_trace(const TraceCombination& c) {
  if (c.characteristic() != p_) throw std::invalid_argument("combination of wrong characteristic");
  if (c.terms.is_zero()) {
    DecompDecision d = start("0", Multidegree(), "zero");
    d.decision = Decomposability::Decomposable;
    d.validity = "complete";
    return d;
  }
  if (!c.terms.is_homogeneous()) throw std::invalid_argument("trace combination must be homogeneous");
  if (p_ == 3) return trace_decomposable_p3(c);
  if (degree_one_letter(c.mdeg())) return lemma3_reduce(c);
  TraceForm f = canonical_trace_form(c.terms, p_);
  DecompDecision out;
  if (f.traces.is_zero()) {
    out = start(c.str(), c.mdeg(), "lemma4");
    out.decision = Decomposability::Decomposable;
    out.validity = "complete";
    out.note = "rewriting inside the trace reduces it to 0";
    return out;
  }
  std::string reduced = TraceCombination{f.traces}.str();
  if (f.traces.size() == 1) {
    const auto& [w, a] = *f.traces.terms().begin();
    out = decide_word(w);
  } else {
    out = start(c.str(), c.mdeg(), "lemma4");
    out.decision = Decomposability::Decomposable;
    for (const auto& [w, a] : f.traces.terms()) {
      DecompDecision part = decide_word(w);
      if (part.decision != Decomposability::Decomposable) {
        out.decision = Decomposability::Indeterminate;
        out.note = "term tr(" + w.str() + ") is " + decomposability_name(part.decision);
        break;
      }
    }
  }
  out.expression = c.str();
  if (reduced != c.str()) out.note = "reduces to " + reduced + (out.note.empty() ? "" : "; " + out.note);
  return out;
}

DecompDecision DecompOracle::decide_sigma_letter(int k) {
  if (k != 2 && k != 3) throw std::invalid_argument("only s2 and det of a letter are covered");
  DecompDecision d = start(k == 2 ? "s2(x1)" : "det(x1)", Multidegree{k}, "lemma7");
  d.validity = "complete";
  d.decision = elementary_independent(k, p_) ? Decomposability::Indecomposable : Decomposability::Indeterminate;
  d.note = "e" + std::to_string(k) + " is not a polynomial in lower elementary symmetric functions";
  return d;
}

DecompDecision DecompOracle::decide_sigma2(const Word& u) {
  if (u.size() == 1) {
    DecompDecision d = decide_sigma_letter(2);
    d.expression = "s2(" + u.str() + ")";
    return d;
  }
  TraceForm f = canonical_sigma2_form(u, p_);
  DecompDecision d = decide_trace(TraceCombination{f.traces});
  d.expression = "s2(" + u.str() + ")";
  d.mdeg = mdeg(u.power(2));
  d.note = "s2 = " + TraceCombination{f.traces}.str() + " modulo decomposables" + (d.note.empty() ? "" : "; " + d.note);
  return d;
}

DecompDecision trace_decomposable_p3(const TraceCombination& c, const SolveOptions& opts) {
  return DecompOracle(c.characteristic(), opts).trace_decomposable_p3(c);
}

DecompDecision lemma3_reduce(const Word& u, std::uint32_t p, const SolveOptions& opts) {
  return DecompOracle(p, opts).lemma3_reduce(u);
}

DecompDecision lemma5_reduce(const Word& g, Letter x, std::uint32_t p, const SolveOptions& opts) {
  return DecompOracle(p, opts).lemma5_reduce(g, x);
}

DecompDecision lemma6_reduce(const Word& u, const Word& v, Letter x, std::uint32_t p, const SolveOptions& opts) {
  return DecompOracle(p, opts).lemma6_reduce(u, v, x);
}

// Commutative monomials in t1, t2, t3 are encoded as sorted words.
bool elementary_independent(int k, std::uint32_t p) {
  if (k < 1 || k > 3) throw std::invalid_argument("elementary functions of three variables have k in 1..3");
  auto mul = [&](const LinComb& a, const LinComb& b) {
    LinComb out(p);
    for (const auto& [u, c] : a.terms())
      for (const auto& [v, e] : b.terms()) {
        std::vector<Letter> l;
        for (std::size_t i = 0; i < u.size(); ++i) l.push_back(u[i]);
        for (std::size_t i = 0; i < v.size(); ++i) l.push_back(v[i]);
        std::sort(l.begin(), l.end());
        out.add(Word(l), c * e);
      }
    return out;
  };
  std::vector<LinComb> e(4, LinComb(p));
  e[0].add(Word(), 1);
  e[1] = LinComb::parse("x1 + x2 + x3", p);
  e[2] = LinComb::parse("x1 x2 + x1 x3 + x2 x3", p);
  e[3] = LinComb::parse("x1 x2 x3", p);
  // products of lower e's of total degree k
  std::vector<LinComb> products;
  std::function<void(int, int, LinComb)> rec = [&](int rest, int max_part, LinComb acc) {
    if (rest == 0) {
      products.push_back(acc);
      return;
    }
    for (int part = std::min(rest, max_part); part >= 1; --part) rec(rest - part, part, mul(acc, e[part]));
  };
  rec(k, k - 1, e[0]);
  std::vector<LinComb> basis;
  auto reduce = [&](LinComb v) {
    for (const LinComb& b : basis) {
      const auto& [lead, lc] = *b.terms().begin();
      Scalar c = v.coeff(lead);
      if (!c.is_zero()) v -= b * (c / lc);
    }
    return v;
  };
  for (const LinComb& q : products) {
    LinComb r = reduce(q);
    if (r.is_zero()) continue;
    // keep leads distinct by reducing the existing basis against the new row
    for (LinComb& b : basis) {
      const auto& [lead, lc] = *r.terms().begin();
      Scalar c = b.coeff(lead);
      if (!c.is_zero()) b -= r * (c / lc);
    }
    basis.push_back(r);
  }
  return !reduce(e[k]).is_zero();
}

bool DegreeBound::matches() const {
  if (expected.empty()) return true;
  if (exact()) return std::find(expected.begin(), expected.end(), lower) != expected.end();
  int lo = *std::min_element(expected.begin(), expected.end());
  int hi = *std::max_element(expected.begin(), expected.end());
  return lower <= hi && (upper == 0 || upper >= lo);
}

nlohmann::json to_json(const DegreeBound& b) {
  nlohmann::json j;
  j["lower"] = b.lower;
  if (b.upper) j["upper"] = b.upper;
  j["exact"] = b.exact();
  if (!b.exact()) j["bound_only"] = true;
  j["expected"] = b.expected;
  j["matches"] = b.matches();
  return j;
}

nlohmann::json to_json(const Theorem2Report& r, bool with_certificates) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["d"] = r.d;
  j["p"] = r.p;
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries) {
    nlohmann::json x = to_json(e.decision, with_certificates);
    x["label"] = e.label;
    x["expected"] = e.expected;
    x["matches"] = e.matches();
    entries.push_back(x);
  }
  j["entries"] = entries;
  j["D_tr"] = to_json(r.d_tr);
  if (r.d_sigma2) j["D_sigma2"] = to_json(*r.d_sigma2);
  j["D"] = to_json(r.d_total);
  if (r.nilpotency_upper) j["nilpotency_upper"] = r.nilpotency_upper;
  j["notes"] = r.notes;
  return j;
}

std::vector<int> expected_d(int d, std::uint32_t p) {
  if (d < 1) throw std::invalid_argument("d must be positive");
  if (d == 1) return {3};
  if (p == 2) return {d >= 4 ? d + 2 : 6};
  if (p == 3) {
    if (d % 2 == 0) return {3 * d};
    if (d % 6 == 1) return {3 * d - 1, 3 * d};
    return {3 * d - 1};
  }
  return {6};
}

namespace {

Word letters_word(std::initializer_list<std::pair<Letter, int>> parts) {
  Word w;
  for (const auto& [x, e] : parts)
    for (int i = 0; i < e; ++i) w.push_back(x);
  return w;
}

Word w_power(int k) {
  Word w;
  for (int i = 0; i < k; ++i) w += w_word(2 * i + 1, 2 * i + 2);
  return w;
}

}  // namespace

Theorem2Report theorem2_report(int d, std::uint32_t p, const SolveOptions& opts) {
  if (d < 1) throw std::invalid_argument("d must be positive");
  DecompOracle o(p, opts);
  Theorem2Report r;
  r.d = d;
  r.p = p;
  const char* dec = "decomposable";
  const char* indec = "indecomposable";
  auto add = [&](std::string label, const char* expected, DecompDecision dd) {
    r.entries.push_back({std::move(label), expected, std::move(dd)});
  };
  const Word x1{1};
  add("tr(X^2)", p == 2 ? dec : indec, o.decide_trace(x1.power(2)));
  add("tr(X^3)", p == 3 ? dec : indec, o.decide_trace(x1.power(3)));
  add("s2(X)", indec, o.decide_sigma_letter(2));
  add("det(X)", indec, o.decide_sigma_letter(3));
  if (d == 1) add("tr(X^4)", dec, o.decide_trace(x1.power(4)));
  if (d >= 2) {
    add("tr(X^2 Y^2 X Y)", indec, o.decide_trace(w_word(1, 2)));
    if (p == 2) {
      add("s2(X1 X2)", indec, o.decide_sigma2(Word{1, 2}));
      if (d >= 3) {
        add("tr(X^2 Y^2 Z^2)", indec, o.decide_trace(letters_word({{1, 2}, {2, 2}, {3, 2}})));
        add("tr(X^2 Y^2 X Z)", indec, o.decide_trace(Word{1, 1, 2, 2, 1, 3}));
        Word all;
        for (Letter x = 1; x <= d; ++x) all.push_back(x);
        add("s2(X1 ... Xd)", d >= 4 ? dec : indec, o.decide_sigma2(all));
      }
      if (d >= 4) {
        Word a{1, 1, 2, 1}, b{1, 1}, c{1, 1, 2, 2};
        for (Letter x = 3; x <= d; ++x) a.push_back(x);
        for (Letter x = 2; x < d; ++x) b.push_back(x);
        b.push_back(1);
        b.push_back(d);
        for (Letter x = 3; x <= d; ++x) c.push_back(x);
        add("tr(X1^2 X2 X1 X3 ... Xd)", indec, o.decide_trace(a));
        add("tr(X1^2 X2 ... X(d-1) X1 Xd)", indec, o.decide_trace(b));
        add("tr(X1^2 X2^2 X3 ... Xd)", indec, o.decide_trace(c));
      }
    }
    if (p == 3) {
      if (d % 2 == 0) {
        add("tr(W^" + std::to_string(d / 2) + ")", indec, o.decide_trace(w_power(d / 2)));
      } else {
        Word xw{d, d};
        add("tr(X^2 W^" + std::to_string(d / 2) + ")", indec, o.decide_trace(xw + w_power(d / 2)));
      }
    }
  }

  // lower bounds from the named invariants
  int tr_lower = 0, s2_lower = 0;
  for (const auto& e : r.entries) {
    if (e.decision.decision != Decomposability::Indecomposable) continue;
    int deg = e.decision.mdeg.total();
    if (e.label.rfind("tr(", 0) == 0) tr_lower = std::max(tr_lower, deg);
    if (e.label.rfind("s2(", 0) == 0) s2_lower = std::max(s2_lower, deg);
  }

  // traces of degree > C are decomposable (G of degree >= C vanishes); sweep
  // the canonical classes of degrees up to C
  SolveOptions nil_opts = opts;
  nil_opts.certify = false;
  NilpotencyResult c = nilpotency_degree(d, p, 3, nil_opts);
  r.nilpotency_upper = c.upper;
  int tr_upper = 0;
  if (c.upper == 0) {
    r.notes.push_back("nilpotency degree not bounded within budget; D_tr has no upper bound");
  } else {
    int undecided_top = 0;
    for (int len = tr_lower + 1; len <= c.upper; ++len) {
      for (const Multidegree& m : sorted_multidegrees(len, d)) {
        bool large = false;
        for (int v : m.counts()) large = large || v >= 4;
        if (large) continue;
        std::set<Word> classes;
        for_each_word(m, [&](const Word& w) {
          if (is_canonical(w)) classes.insert(cyclic_representative(w));
        });
        for (const Word& w : classes) {
          DecompDecision dd = o.decide_trace(*canonical_rotation(w));
          if (dd.decision == Decomposability::Indecomposable) {
            tr_lower = std::max(tr_lower, len);
            r.notes.push_back("indecomposable " + dd.expression + " found by the sweep");
          } else if (!dd.decided()) {
            undecided_top = std::max(undecided_top, len);
            r.notes.push_back("undecided " + dd.expression + " (" + dd.route + ")");
          }
        }
      }
    }
    tr_upper = std::max(tr_lower, undecided_top);
    r.notes.push_back("components with a letter of degree >= 4 have no canonical words");
  }
  r.d_tr = {tr_lower, tr_upper, d >= 2 ? expected_d(d, p) : std::vector<int>{}};

  int top = std::max(tr_upper, 3);
  if (p == 2) {
    // s2(AB) = tr(A^2 B^2) has degree 2|U|, so only |U| <= D_tr / 2 can matter
    int s2_upper = 0;
    if (tr_upper) {
      int undecided_top = 0;
      for (int len = s2_lower / 2 + 1; 2 * len <= tr_upper; ++len)
        for (const Multidegree& m : sorted_multidegrees(len, d)) {
          std::set<Word> classes;
          for_each_word(m, [&](const Word& w) {
            if (is_canonical(w)) classes.insert(cyclic_representative(w));
          });
          for (const Word& w : classes) {
            DecompDecision dd = o.decide_sigma2(*canonical_rotation(w));
            if (dd.decision == Decomposability::Indecomposable) {
              s2_lower = std::max(s2_lower, 2 * len);
              r.notes.push_back("indecomposable " + dd.expression + " found by the sweep");
            } else if (!dd.decided()) {
              undecided_top = std::max(undecided_top, 2 * len);
            }
          }
        }
      s2_upper = std::max(s2_lower, undecided_top);
    }
    std::vector<int> s2_expected;
    if (d >= 2) s2_expected = {d >= 3 ? 6 : 4};
    r.d_sigma2 = DegreeBound{s2_lower, s2_upper, s2_expected};
    top = std::max(top, s2_upper);
  }
  int lower = std::max({tr_lower, s2_lower, 3});
  r.d_total = {lower, tr_upper ? top : 0, expected_d(d, p)};
  return r;
}

}  // namespace nilcert
