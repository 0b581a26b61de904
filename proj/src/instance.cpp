#include "nilcert/instance.hpp"

#include <stdexcept>

namespace nilcert {

const char* kind_name(IdentityKind k) {
  switch (k) {
    case IdentityKind::T1: return "T1";
    case IdentityKind::T2: return "T2";
    case IdentityKind::T3: return "T3";
    case IdentityKind::Cyclic: return "CYCLIC";
  }
  return "?";
}

IdentityKind kind_from_name(const std::string& name) {
  if (name == "T1") return IdentityKind::T1;
  if (name == "T2") return IdentityKind::T2;
  if (name == "T3") return IdentityKind::T3;
  if (name == "CYCLIC") return IdentityKind::Cyclic;
  throw std::invalid_argument("unknown identity kind '" + name + "'");
}

std::string IdentityInstance::key() const {
  std::string k = kind_name(kind);
  k += '|';
  k += left.bytes();
  for (const Word& a : args) {
    k += '|';
    k += a.bytes();
  }
  k += '|';
  k += right.bytes();
  if (kind == IdentityKind::Cyclic) k += '|' + std::to_string(offset);
  return k;
}

std::string IdentityInstance::str() const {
  std::string s;
  if (kind == IdentityKind::Cyclic) return "CYCLIC(" + args.at(0).str() + ", " + std::to_string(offset) + ")";
  if (!left.empty()) s += left.str() + " ";
  s += kind_name(kind);
  s += "(";
  for (std::size_t i = 0; i < args.size(); ++i) s += (i ? ", " : "") + args[i].str();
  s += ")";
  if (!right.empty()) s += " " + right.str();
  return s;
}

namespace {

void check_shape(const IdentityInstance& inst, int n) {
  std::size_t want = 0;
  switch (inst.kind) {
    case IdentityKind::T1: want = 1; break;
    case IdentityKind::T2: want = 2; break;
    case IdentityKind::T3: want = 3; break;
    case IdentityKind::Cyclic: want = 1; break;
  }
  if (inst.args.size() != want)
    throw std::invalid_argument(std::string(kind_name(inst.kind)) + " instance needs " + std::to_string(want) +
                                " argument(s)");
  for (const Word& a : inst.args)
    if (a.empty()) throw std::invalid_argument("identity argument words must be non-empty");
  if (n == 2 && inst.kind == IdentityKind::T3) throw std::invalid_argument("T3 rows do not exist for n = 2");
  if (n != 2 && n != 3) throw std::invalid_argument("nil exponent must be 2 or 3");
  if (inst.kind == IdentityKind::Cyclic &&
      (inst.offset <= 0 || static_cast<std::size_t>(inst.offset) >= inst.args[0].size()))
    throw std::invalid_argument("cyclic row offset must lie strictly inside the word");
}

}  // namespace

std::vector<std::pair<Word, int>> expand_terms(const IdentityInstance& inst, int n) {
  check_shape(inst, n);
  std::vector<std::pair<Word, int>> out;
  auto emit = [&](std::initializer_list<const Word*> middle, int c) {
    Word w = inst.left;
    for (const Word* m : middle) w += *m;
    w += inst.right;
    out.emplace_back(std::move(w), c);
  };
  const auto& f = inst.args;
  switch (inst.kind) {
    case IdentityKind::T1:
      if (n == 3)
        emit({&f[0], &f[0], &f[0]}, 1);
      else
        emit({&f[0], &f[0]}, 1);
      break;
    case IdentityKind::T2:
      if (n == 3) {
        emit({&f[0], &f[0], &f[1]}, 1);
        emit({&f[0], &f[1], &f[0]}, 1);
        emit({&f[1], &f[0], &f[0]}, 1);
      } else {
        emit({&f[0], &f[1]}, 1);
        emit({&f[1], &f[0]}, 1);
      }
      break;
    case IdentityKind::T3:
      emit({&f[0], &f[1], &f[2]}, 1);
      emit({&f[0], &f[2], &f[1]}, 1);
      emit({&f[1], &f[0], &f[2]}, 1);
      emit({&f[1], &f[2], &f[0]}, 1);
      emit({&f[2], &f[0], &f[1]}, 1);
      emit({&f[2], &f[1], &f[0]}, 1);
      break;
    case IdentityKind::Cyclic:
      out.emplace_back(f[0], 1);
      out.emplace_back(f[0].rotate(static_cast<std::size_t>(inst.offset)), -1);
      break;
  }
  return out;
}

LinComb expand_identity(const IdentityInstance& inst, std::uint32_t p, int n) {
  LinComb e(p);
  for (const auto& [w, c] : expand_terms(inst, n)) e.add(w, c);
  return e;
}

Multidegree instance_mdeg(const IdentityInstance& inst, std::size_t d, int n) {
  return mdeg(expand_terms(inst, n).front().first, d);
}

nlohmann::json to_json(const IdentityInstance& inst) {
  nlohmann::json j;
  j["kind"] = kind_name(inst.kind);
  if (inst.kind == IdentityKind::Cyclic) {
    j["word"] = inst.args.at(0).str();
    j["offset"] = inst.offset;
    return j;
  }
  j["g1"] = inst.left.empty() ? "" : inst.left.str();
  nlohmann::json args = nlohmann::json::array();
  for (const Word& a : inst.args) args.push_back(a.str());
  j["args"] = args;
  j["g2"] = inst.right.empty() ? "" : inst.right.str();
  return j;
}

IdentityInstance instance_from_json(const nlohmann::json& j) {
  IdentityInstance inst;
  inst.kind = kind_from_name(j.at("kind").get<std::string>());
  if (inst.kind == IdentityKind::Cyclic) {
    inst.args = {Word::parse(j.at("word").get<std::string>())};
    inst.offset = j.at("offset").get<int>();
    return inst;
  }
  auto border = [](const nlohmann::json& v) {
    std::string s = v.get<std::string>();
    return s.empty() ? Word() : Word::parse(s);
  };
  inst.left = border(j.at("g1"));
  inst.right = border(j.at("g2"));
  for (const auto& a : j.at("args")) inst.args.push_back(Word::parse(a.get<std::string>()));
  return inst;
}

}  // namespace nilcert
