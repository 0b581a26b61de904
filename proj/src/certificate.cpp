#include "nilcert/certificate.hpp"

#include <map>
#include <unordered_map>
#include <unordered_set>

namespace nilcert {

const char* Certificate::kind() const {
  switch (body.index()) {
    case 0: return "zero";
    case 1: return "nonzero";
    default: return "component_zero";
  }
}

namespace {

nlohmann::json rows_json(const std::vector<std::pair<IdentityInstance, Scalar>>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [inst, c] : rows) arr.push_back({{"provenance", to_json(inst)}, {"coeff", c.to_string()}});
  return arr;
}

std::vector<std::pair<IdentityInstance, Scalar>> rows_from_json(const nlohmann::json& arr, std::uint32_t p) {
  std::vector<std::pair<IdentityInstance, Scalar>> rows;
  for (const auto& r : arr)
    rows.emplace_back(instance_from_json(r.at("provenance")), Scalar::parse(r.at("coeff").get<std::string>(), p));
  return rows;
}

Word word_from(const nlohmann::json& j) { return Word::parse(j.get<std::string>()); }

}  // namespace

nlohmann::json to_json(const Certificate& c) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["system"] = to_json(c.system);
  j["target"] = to_json(c.target);
  j["kind"] = c.kind();
  if (const auto* z = std::get_if<ZeroCertificate>(&c.body)) {
    j["rows"] = rows_json(z->rows);
  } else if (const auto* n = std::get_if<NonzeroWitness>(&c.body)) {
    nlohmann::json f = nlohmann::json::array();
    for (const auto& [w, v] : n->functional) f.push_back({{"word", w.str()}, {"value", v.to_string()}});
    j["functional"] = f;
    j["value"] = n->value.to_string();
  } else {
    const auto& cz = std::get<ComponentZeroCertificate>(c.body);
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : cz.steps) {
      nlohmann::json succ = nlohmann::json::array();
      for (const auto& [w, k] : s.successors) succ.push_back({{"word", w.str()}, {"coeff", k}});
      steps.push_back({{"word", s.word.str()}, {"provenance", to_json(s.instance)}, {"successors", succ}});
    }
    nlohmann::json spans = nlohmann::json::array();
    for (const auto& [w, rows] : cz.spans) spans.push_back({{"word", w.str()}, {"rows", rows_json(rows)}});
    j["steps"] = steps;
    j["spans"] = spans;
  }
  return j;
}

Certificate certificate_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw std::invalid_argument("certificate must be a JSON object");
  Certificate c;
  c.system = descriptor_from_json(j.at("system"));
  const std::uint32_t p = c.system.p;
  c.target = lincomb_from_json(j.at("target"), p);
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "zero") {
    c.body = ZeroCertificate{rows_from_json(j.at("rows"), p)};
  } else if (kind == "nonzero") {
    NonzeroWitness n;
    for (const auto& e : j.at("functional"))
      n.functional.emplace_back(word_from(e.at("word")), Scalar::parse(e.at("value").get<std::string>(), p));
    n.value = Scalar::parse(j.at("value").get<std::string>(), p);
    c.body = std::move(n);
  } else if (kind == "component_zero") {
    ComponentZeroCertificate cz;
    for (const auto& s : j.at("steps")) {
      ComponentZeroCertificate::Step step;
      step.word = word_from(s.at("word"));
      step.instance = instance_from_json(s.at("provenance"));
      for (const auto& e : s.at("successors")) step.successors.emplace_back(word_from(e.at("word")), e.at("coeff").get<int>());
      cz.steps.push_back(std::move(step));
    }
    for (const auto& s : j.at("spans")) cz.spans.emplace_back(word_from(s.at("word")), rows_from_json(s.at("rows"), p));
    c.body = std::move(cz);
  } else {
    throw std::invalid_argument("unknown certificate kind '" + kind + "'");
  }
  return c;
}

void compact(ZeroCertificate& z) {
  std::map<std::string, std::size_t> pos;
  std::vector<std::pair<IdentityInstance, Scalar>> out;
  for (auto& [inst, c] : z.rows) {
    auto [it, inserted] = pos.emplace(inst.key(), out.size());
    if (inserted)
      out.emplace_back(std::move(inst), c);
    else
      out[it->second].second += c;
  }
  z.rows.clear();
  for (auto& r : out)
    if (!r.second.is_zero()) z.rows.push_back(std::move(r));
}

bool instance_belongs(const IdentityInstance& inst, const SystemDescriptor& d, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (inst.kind == IdentityKind::Cyclic && !d.cyclic) return fail("cyclic row in a system without cyclic rows");
  try {
    expand_terms(inst, d.n);
  } catch (const std::exception& e) {
    return fail(std::string("malformed instance: ") + e.what());
  }
  Multidegree m = instance_mdeg(inst, 0, d.n);
  if (!(m == d.mdeg)) return fail("instance " + inst.str() + " has multidegree " + m.str());
  return true;
}

namespace {

VerifyResult bad(std::string why) { return {false, std::move(why)}; }

LinComb weighted_sum(const std::vector<std::pair<IdentityInstance, Scalar>>& rows, const SystemDescriptor& d,
                     std::string* why) {
  LinComb sum(d.p);
  for (const auto& [inst, c] : rows) {
    if (c.characteristic() != d.p) throw std::invalid_argument("coefficient of wrong characteristic");
    if (!instance_belongs(inst, d, why)) throw std::invalid_argument(*why);
    for (const auto& [w, k] : expand_terms(inst, d.n)) sum.add(w, c * Scalar(k, d.p));
  }
  return sum;
}

template <class F>
VerifyResult check_witness(const F& f, const Certificate& c, const NonzeroWitness& n) {
  using Elem = typename F::Elem;
  const SystemDescriptor& d = c.system;
  std::unordered_map<std::string, Elem> phi;
  for (const auto& [w, v] : n.functional) {
    if (!(mdeg(w) == d.mdeg)) return bad("functional word " + w.str() + " outside the component");
    if (v.characteristic() != d.p) return bad("functional value of wrong characteristic");
    if (!phi.emplace(w.bytes(), f.from_scalar(v)).second) return bad("functional lists " + w.str() + " twice");
  }
  auto at = [&](const Word& w) {
    auto it = phi.find(w.bytes());
    return it == phi.end() ? f.zero() : it->second;
  };
  Elem pairing = f.zero();
  for (const auto& [w, v] : c.target.terms()) pairing = f.add(pairing, f.mul(f.from_scalar(v), at(w)));
  if (!(f.to_scalar(pairing) == n.value)) return bad("stated value differs from the pairing with the target");
  if (f.is_zero(pairing)) return bad("functional vanishes on the target");
  std::string failure;
  try {
    for_each_instance(d, [&](const IdentityInstance& inst) {
      if (!failure.empty()) return;
      Elem s = f.zero();
      for (const auto& [w, k] : expand_terms(inst, d.n)) s = f.add(s, f.mul(f.from_int(k), at(w)));
      if (!f.is_zero(s)) failure = "functional does not annihilate " + inst.str();
    });
  } catch (const BudgetExceeded& e) {
    return bad(e.what());
  }
  if (!failure.empty()) return bad(failure);
  return {true, ""};
}

VerifyResult check_component(const Certificate& c, const ComponentZeroCertificate& cz) {
  const SystemDescriptor& d = c.system;
  const std::uint32_t p = d.p;
  std::unordered_map<std::string, const ComponentZeroCertificate::Step*> steps;
  for (const auto& s : cz.steps) {
    if (!(mdeg(s.word) == d.mdeg)) return bad("step word " + s.word.str() + " outside the component");
    std::string why;
    if (!instance_belongs(s.instance, d, &why)) return bad(why);
    LinComb lhs = LinComb::of(s.word, p);
    for (const auto& [w, k] : s.successors) lhs.add(w, -k);
    if (!(lhs == expand_identity(s.instance, p, d.n))) return bad("step for " + s.word.str() + " does not match its instance");
    if (!steps.emplace(s.word.bytes(), &s).second) return bad("two steps for " + s.word.str());
  }
  // reduction through the steps, terminals kept
  std::unordered_map<std::string, LinComb> memo;
  std::unordered_set<std::string> active;
  std::function<const LinComb&(const Word&)> reduce = [&](const Word& w) -> const LinComb& {
    auto it = memo.find(w.bytes());
    if (it != memo.end()) return it->second;
    auto st = steps.find(w.bytes());
    LinComb r(p);
    if (st == steps.end()) {
      r.add(w, 1);
    } else {
      if (!active.insert(w.bytes()).second) throw std::invalid_argument("rewriting steps form a cycle at " + w.str());
      for (const auto& [succ, k] : st->second->successors) {
        LinComb part = reduce(succ);
        part *= Scalar(k, p);
        r += part;
      }
      active.erase(w.bytes());
    }
    return memo.emplace(w.bytes(), std::move(r)).first->second;
  };
  std::unordered_set<std::string> certified;
  try {
    for (const auto& [t, rows] : cz.spans) {
      if (steps.count(t.bytes())) return bad("span given for non-terminal word " + t.str());
      LinComb sum(p);
      for (const auto& [inst, coeff] : rows) {
        std::string why;
        if (!instance_belongs(inst, d, &why)) return bad(why);
        if (coeff.characteristic() != p) return bad("coefficient of wrong characteristic");
        for (const auto& [w, k] : expand_terms(inst, d.n)) {
          LinComb part = reduce(w);
          part *= coeff * Scalar(k, p);
          sum += part;
        }
      }
      if (!(sum == LinComb::of(t, p))) return bad("span for " + t.str() + " does not reproduce it");
      certified.insert(t.bytes());
    }
    bool all = true;
    std::string missing;
    for_each_word(d.mdeg, [&](const Word& w) {
      if (!all) return;
      for (const auto& [u, k] : reduce(w).terms())
        if (!certified.count(u.bytes())) {
          all = false;
          missing = u.str();
          return;
        }
    });
    if (!all) return bad("terminal word " + missing + " has no span");
  } catch (const std::invalid_argument& e) {
    return bad(e.what());
  }
  return {true, ""};
}

}  // namespace

VerifyResult verify_certificate(const Certificate& c) {
  try {
    c.system.validate();
    const SystemDescriptor& d = c.system;
    if (c.target.characteristic() != d.p) return bad("target of wrong characteristic");
    if (!c.target.is_zero() && !(c.target.mdeg() == d.mdeg)) return bad("target outside the component");
    if (const auto* z = std::get_if<ZeroCertificate>(&c.body)) {
      std::string why;
      LinComb sum = weighted_sum(z->rows, d, &why);
      if (!(sum == c.target)) return bad("weighted rows do not reproduce the target");
      return {true, ""};
    }
    if (const auto* n = std::get_if<NonzeroWitness>(&c.body)) {
      if (n->value.characteristic() != d.p) return bad("value of wrong characteristic");
      return with_field(d.p, [&](auto f) { return check_witness(f, c, *n); });
    }
    if (!c.target.is_zero()) return bad("component certificates carry a zero target");
    return check_component(c, std::get<ComponentZeroCertificate>(c.body));
  } catch (const std::exception& e) {
    return bad(e.what());
  }
}

}  // namespace nilcert
