#include "nilcert/rewrite.hpp"

#include <algorithm>
#include <stdexcept>

namespace nilcert {

namespace {

struct Block {
  std::size_t start;
  std::size_t len;
};

std::vector<Block> blocks_of(const std::string& b, char x) {
  std::vector<Block> out;
  for (std::size_t i = 0; i < b.size();) {
    if (b[i] != x) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < b.size() && b[j] == x) ++j;
    out.push_back({i, j - i});
    i = j;
  }
  return out;
}

bool canonical_pattern(const std::vector<Block>& bl) {
  switch (bl.size()) {
    case 0: return true;
    case 1: return bl[0].len <= 2;
    case 2: return bl[0].len == 2 && bl[1].len == 1;
    default: return false;
  }
}

Word piece(const std::string& b, std::size_t pos, std::size_t len = std::string::npos) {
  return Word::from_bytes(b.substr(pos, len));
}

RewriteStep erase_cube(const std::string& b, std::size_t start, Letter x) {
  RewriteStep s;
  s.instance = IdentityInstance::t1(piece(b, 0, start), Word({x}), piece(b, start + 3));
  s.letter = x;
  return s;
}

// x u x -> -x^2 u - u x^2 with the first x at i and the second at j
RewriteStep rule_two(const std::string& b, std::size_t i, std::size_t j, Letter x) {
  Word g1 = piece(b, 0, i), u = piece(b, i + 1, j - i - 1), g2 = piece(b, j + 1);
  Word xx({x, x});
  RewriteStep s;
  s.instance = IdentityInstance::t2(g1, Word({x}), u, g2);
  s.successors = {{g1 + xx + u + g2, -1}, {g1 + u + xx + g2, -1}};
  s.letter = x;
  return s;
}

// x u x^2 -> -x^2 u x (and the cube term of T2(x, x u))
RewriteStep rule_three(const std::string& b, std::size_t i, std::size_t j, Letter x) {
  Word g1 = piece(b, 0, i), u = piece(b, i + 1, j - i - 1), g2 = piece(b, j + 2);
  Word one({x});
  RewriteStep s;
  s.instance = IdentityInstance::t2(g1, one, one + u, g2);
  s.successors = {{g1 + one.power(3) + u + g2, -1}, {g1 + one.power(2) + u + one + g2, -1}};
  s.letter = x;
  return s;
}

std::optional<RewriteStep> letter_move(const std::string& b, Letter x) {
  char cx = static_cast<char>(x);
  auto bl = blocks_of(b, cx);
  for (const Block& k : bl)
    if (k.len >= 3) return erase_cube(b, k.start, x);
  if (canonical_pattern(bl)) return std::nullopt;
  for (std::size_t k = 0; k + 1 < bl.size(); ++k) {
    if (bl[k].len != 1) continue;
    if (bl[k + 1].len == 2) return rule_three(b, bl[k].start, bl[k + 1].start, x);
    return rule_two(b, bl[k].start, bl[k + 1].start, x);
  }
  for (std::size_t k = 0; k + 1 < bl.size(); ++k)
    if (bl[k].len == 2 && bl[k + 1].len == 2) return rule_two(b, bl[k].start + 1, bl[k + 1].start, x);
  throw std::logic_error("no rewriting move for a non-canonical pattern");
}

bool has_cube(const std::string& b, char x) {
  for (std::size_t i = 0; i + 2 < b.size(); ++i)
    if (b[i] == x && b[i + 1] == x && b[i + 2] == x) return true;
  return false;
}

void add_checked(std::int64_t& acc, std::int64_t term) {
  if (__builtin_add_overflow(acc, term, &acc)) throw std::overflow_error("canonical coefficient overflow");
}

std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("canonical coefficient overflow");
  return r;
}

}  // namespace

std::optional<RewriteStep> rewrite_step_for_letter(const Word& w, Letter x) { return letter_move(w.bytes(), x); }

std::optional<RewriteStep> rewrite_step(const Word& w) {
  const std::string& b = w.bytes();
  for (std::size_t i = 0; i + 2 < b.size(); ++i)
    if (b[i] == b[i + 1] && b[i] == b[i + 2]) return erase_cube(b, i, static_cast<unsigned char>(b[i]));
  Letter top = w.max_letter();
  for (Letter x = 1; x <= top; ++x)
    if (auto s = letter_move(b, x)) return s;
  return std::nullopt;
}

std::pair<int, int> rewrite_measure(const Word& w, Letter x) {
  auto bl = blocks_of(w.bytes(), static_cast<char>(x));
  int count = static_cast<int>(bl.size());
  int singles = 0;
  for (int k = 0; k < count; ++k)
    if (bl[static_cast<std::size_t>(k)].len == 1) singles += count - k;
  return {count, singles};
}

const Canonicalizer::Entry& Canonicalizer::entry(const Word& w) {
  auto it = memo_.find(w.bytes());
  if (it != memo_.end()) return it->second;
  Entry e;
  if (n_ == 3) e.step = only_ ? rewrite_step_for_letter(w, only_) : rewrite_step(w);
  if (!e.step) {
    std::uint32_t id = static_cast<std::uint32_t>(canonical_.size());
    canonical_.push_back(w);
    e.expansion = {{id, 1}};
    return memo_.emplace(w.bytes(), std::move(e)).first->second;
  }
  const RewriteStep& s = *e.step;
  auto before = rewrite_measure(w, s.letter);
  char cx = static_cast<char>(s.letter);
  bool erasing = s.successors.empty();
  Expansion merged;
  for (const auto& [succ, c] : s.successors) {
    if (!erasing && !has_cube(succ.bytes(), cx) && !(rewrite_measure(succ, s.letter) < before))
      throw std::logic_error("rewriting measure did not decrease at " + w.str());
    const Entry& sub = entry(succ);
    e.depth = std::max(e.depth, sub.depth + 1);
    for (const auto& [id, v] : sub.expansion) merged.emplace_back(id, mul_checked(v, c));
  }
  if (erasing) e.depth = 1;
  std::sort(merged.begin(), merged.end());
  for (const auto& [id, v] : merged) {
    if (!e.expansion.empty() && e.expansion.back().first == id)
      add_checked(e.expansion.back().second, v);
    else
      e.expansion.emplace_back(id, v);
    if (e.expansion.back().second == 0) e.expansion.pop_back();
  }
  return memo_.emplace(w.bytes(), std::move(e)).first->second;
}

const Canonicalizer::Expansion& Canonicalizer::expand(const Word& w) { return entry(w).expansion; }

const RewriteStep* Canonicalizer::step(const Word& w) {
  const Entry& e = entry(w);
  return e.step ? &*e.step : nullptr;
}

int Canonicalizer::depth(const Word& w) { return entry(w).depth; }

std::uint32_t Canonicalizer::id_of(const Word& w) {
  const Entry& e = entry(w);
  if (e.step) throw std::invalid_argument("word is not terminal: " + w.str());
  return e.expansion.front().first;
}

namespace {

LinComb apply(Canonicalizer& canon, const LinComb& e) {
  LinComb out(e.characteristic());
  for (const auto& [w, c] : e.terms())
    for (const auto& [id, v] : canon.expand(w)) out.add(canon.canonical_word(id), c * Scalar(v, e.characteristic()));
  return out;
}

}  // namespace

LinComb canonicalize(const LinComb& e) {
  if (!e.is_homogeneous()) throw std::invalid_argument("canonicalize needs a homogeneous combination");
  Canonicalizer canon;
  return apply(canon, e);
}

LinComb canonicalize_letter(const LinComb& e, Letter x) {
  if (!e.is_homogeneous()) throw std::invalid_argument("canonicalize needs a homogeneous combination");
  if (x < 1 || x > kMaxLetter) throw std::out_of_range("letter index out of range");
  Canonicalizer canon(x);
  return apply(canon, e);
}

LinComb substitute_unit(const LinComb& e, Letter k) {
  if (e.is_zero()) return e;
  if (!e.is_homogeneous()) throw std::invalid_argument("substitute_unit needs a homogeneous combination");
  const Word& first = e.terms().begin()->first;
  int deg = first.degree_in(k);
  if (deg != 1 && deg != 2)
    throw std::invalid_argument("substitution x" + std::to_string(k) + " = 1 needs degree 1 or 2 in that letter");
  if (first.size() == static_cast<std::size_t>(deg))
    throw std::invalid_argument("substitution needs another letter besides x" + std::to_string(k));
  LinComb out(e.characteristic());
  for (const auto& [w, c] : e.terms()) out.add(w.without(k), c);
  return out;
}

LinComb pi_operator(const LinComb& e, Letter x) {
  if (e.characteristic() != 3) throw std::invalid_argument("the Pi operator is defined only in characteristic 3");
  if (!e.is_homogeneous()) throw std::invalid_argument("the Pi operator needs a homogeneous combination");
  for (const auto& [w, c] : e.terms())
    if (w.degree_in(x) != 3) throw std::invalid_argument("the Pi operator needs degree 3 in x" + std::to_string(x));
  LinComb canon = canonicalize_letter(e, x);
  LinComb out(3);
  Word one({x});
  for (const auto& [w, c] : canon.terms()) {
    auto bl = blocks_of(w.bytes(), static_cast<char>(x));
    if (bl.size() != 2 || bl[0].len != 2 || bl[1].len != 1)
      throw std::logic_error("unexpected shape after canonicalization: " + w.str());
    const std::string& b = w.bytes();
    Word v1 = piece(b, 0, bl[0].start);
    Word u = piece(b, bl[0].start + 2, bl[1].start - bl[0].start - 2);
    Word v2 = piece(b, bl[1].start + 1);
    out.add(v1 + u + one + v2, c);
    out.add(v1 + one + u + v2, -c);
  }
  return out;
}

}  // namespace nilcert
