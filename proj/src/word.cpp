#include "nilcert/word.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace nilcert {

namespace {

void check_letter(Letter x) {
  if (x < 1 || x > kMaxLetter) throw std::out_of_range("letter index out of range: " + std::to_string(x));
}

}  // namespace

Word::Word(std::initializer_list<Letter> letters) : Word(std::vector<Letter>(letters)) {}

Word::Word(const std::vector<Letter>& letters) {
  letters_.reserve(letters.size());
  for (Letter x : letters) push_back(x);
}

Word& Word::push_back(Letter x) {
  check_letter(x);
  letters_.push_back(static_cast<char>(x));
  return *this;
}

Word Word::parse(std::string_view text) {
  Word w;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_number = [&](const char* what) {
    std::size_t start = i;
    long value = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      value = value * 10 + (text[i] - '0');
      if (value > 1'000'000) throw ParseError(std::string(what) + " too large", start);
      ++i;
    }
    if (i == start) throw ParseError(std::string("expected ") + what, start);
    return static_cast<int>(value);
  };
  skip_ws();
  if (i < text.size() && text[i] == '1') {
    ++i;
    skip_ws();
    if (i != text.size()) throw ParseError("unexpected input after empty word", i);
    return w;
  }
  if (i == text.size()) throw ParseError("empty word text", i);
  while (i < text.size()) {
    if (text[i] != 'x') throw ParseError(std::string("expected letter 'x<i>', found '") + text[i] + "'", i);
    std::size_t at = i;
    ++i;
    int x = read_number("letter index");
    if (x < 1 || x > kMaxLetter) throw ParseError("letter index out of range", at);
    int e = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      e = read_number("exponent");
    }
    for (int k = 0; k < e; ++k) w.push_back(x);
    skip_ws();
  }
  return w;
}

Letter Word::max_letter() const {
  Letter m = 0;
  for (char c : letters_) m = std::max<Letter>(m, static_cast<unsigned char>(c));
  return m;
}

int Word::degree_in(Letter x) const {
  return static_cast<int>(std::count(letters_.begin(), letters_.end(), static_cast<char>(x)));
}

Word Word::power(int e) const {
  if (e < 0) throw std::invalid_argument("negative word exponent");
  Word r;
  for (int k = 0; k < e; ++k) r += *this;
  return r;
}

Word Word::rotate(std::size_t k) const {
  if (letters_.empty()) return *this;
  k %= letters_.size();
  return from_bytes(letters_.substr(k) + letters_.substr(0, k));
}

Word Word::without(Letter x) const {
  std::string r;
  for (char c : letters_)
    if (c != static_cast<char>(x)) r.push_back(c);
  return from_bytes(std::move(r));
}

std::string Word::str() const {
  if (letters_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < letters_.size();) {
    std::size_t j = i;
    while (j < letters_.size() && letters_[j] == letters_[i]) ++j;
    if (!out.empty()) out += ' ';
    out += 'x';
    out += std::to_string(static_cast<unsigned char>(letters_[i]));
    if (j - i > 1) out += '^' + std::to_string(j - i);
    i = j;
  }
  return out;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  int c = a.letters_.compare(b.letters_);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Word& w) { return os << w.str(); }

Multidegree::Multidegree(std::vector<int> counts) : counts_(std::move(counts)) {
  for (int c : counts_)
    if (c < 0) throw std::invalid_argument("negative multidegree entry");
  if (counts_.size() > static_cast<std::size_t>(kMaxLetter)) throw std::out_of_range("too many letters");
}

int Multidegree::total() const {
  int t = 0;
  for (int c : counts_) t += c;
  return t;
}

bool Multidegree::is_multilinear() const {
  return std::all_of(counts_.begin(), counts_.end(), [](int c) { return c <= 1; });
}

Multidegree Multidegree::resized(std::size_t d) const {
  std::vector<int> c = counts_;
  if (c.size() > d) {
    for (std::size_t i = d; i < c.size(); ++i)
      if (c[i] != 0) throw std::invalid_argument("multidegree uses letters beyond the alphabet");
  }
  c.resize(d, 0);
  return Multidegree(std::move(c));
}

Multidegree Multidegree::sorted() const {
  std::vector<int> c = trimmed();
  std::sort(c.begin(), c.end(), std::greater<>());
  while (!c.empty() && c.back() == 0) c.pop_back();
  return Multidegree(std::move(c));
}

Multidegree Multidegree::with_count(Letter x, int count) const {
  std::vector<int> c = counts_;
  if (c.size() < static_cast<std::size_t>(x)) c.resize(static_cast<std::size_t>(x), 0);
  c[static_cast<std::size_t>(x - 1)] = count;
  return Multidegree(std::move(c));
}

std::vector<int> Multidegree::trimmed() const {
  std::vector<int> c = counts_;
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

Multidegree operator+(const Multidegree& a, const Multidegree& b) {
  std::vector<int> c(std::max(a.letters(), b.letters()), 0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a[i] + b[i];
  return Multidegree(std::move(c));
}

bool operator==(const Multidegree& a, const Multidegree& b) { return a.trimmed() == b.trimmed(); }

std::string Multidegree::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(counts_[i]);
  }
  return s + ")";
}

std::ostream& operator<<(std::ostream& os, const Multidegree& m) { return os << m.str(); }

Multidegree mdeg(const Word& w, std::size_t d) {
  std::size_t n = std::max<std::size_t>(d, static_cast<std::size_t>(w.max_letter()));
  std::vector<int> c(n, 0);
  for (std::size_t i = 0; i < w.size(); ++i) ++c[static_cast<std::size_t>(w[i] - 1)];
  return Multidegree(std::move(c));
}

std::size_t word_count(const Multidegree& m) {
  // product of binomials C(n_1 + ... + n_i, n_i)
  unsigned __int128 count = 1;
  const unsigned __int128 limit = std::numeric_limits<std::size_t>::max();
  int so_far = 0;
  for (int c : m.counts()) {
    for (int j = 1; j <= c; ++j) {
      count = count * static_cast<unsigned>(so_far + j) / static_cast<unsigned>(j);
      if (count > limit) return std::numeric_limits<std::size_t>::max();
    }
    so_far += c;
  }
  return static_cast<std::size_t>(count);
}

void for_each_word(const Multidegree& m, const std::function<void(const Word&)>& visit) {
  std::string letters;
  for (std::size_t i = 0; i < m.letters(); ++i) letters.append(static_cast<std::size_t>(m[i]), static_cast<char>(i + 1));
  Word w;
  do {
    w = Word::from_bytes(letters);
    visit(w);
  } while (std::next_permutation(letters.begin(), letters.end()));
}

std::vector<Word> enumerate_words(const Multidegree& m, std::size_t budget) {
  std::size_t n = word_count(m);
  if (n > budget)
    throw BudgetExceeded("component " + m.str() + " has " +
                         (n == std::numeric_limits<std::size_t>::max() ? std::string("too many") : std::to_string(n)) +
                         " words, over the column budget " + std::to_string(budget));
  std::vector<Word> out;
  out.reserve(n);
  for_each_word(m, [&](const Word& w) { out.push_back(w); });
  return out;
}

bool is_canonical_in(const Word& w, Letter x) {
  std::size_t pos[4];
  std::size_t count = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] != x) continue;
    if (count == 3) return false;
    pos[count++] = i;
  }
  switch (count) {
    case 0:
    case 1:
      return true;
    case 2:
      return pos[1] == pos[0] + 1;
    default:
      return pos[1] == pos[0] + 1 && pos[2] > pos[1] + 1;
  }
}

bool is_canonical(const Word& w) {
  Letter top = w.max_letter();
  for (Letter x = 1; x <= top; ++x)
    if (!is_canonical_in(w, x)) return false;
  return true;
}

Word cyclic_representative(const Word& w) {
  if (w.empty()) throw std::invalid_argument("cyclic representative of the empty word");
  Word best = w;
  for (std::size_t k = 1; k < w.size(); ++k) {
    Word r = w.rotate(k);
    if (r < best) best = std::move(r);
  }
  return best;
}

bool is_primitive(const Word& w) {
  std::size_t n = w.size();
  for (std::size_t period = 1; period < n; ++period) {
    if (n % period != 0) continue;
    if (w.substr(0, period).power(static_cast<int>(n / period)) == w) return false;
  }
  return n > 0;
}

std::vector<Word> primitive_cycles(int d, int k) {
  if (d < 1 || k < 1) throw std::invalid_argument("primitive_cycles needs d >= 1 and k >= 1");
  // Duval's generation of Lyndon words in lexicographic order.
  std::vector<Word> out;
  std::vector<int> a(1, -1);
  while (!a.empty()) {
    ++a.back();
    std::size_t m = a.size();
    if (static_cast<int>(m) == k) {
      std::vector<Letter> letters(a.begin(), a.end());
      for (auto& x : letters) x += 1;
      out.emplace_back(letters);
    }
    while (static_cast<int>(a.size()) < k) a.push_back(a[a.size() - m]);
    while (!a.empty() && a.back() == d - 1) a.pop_back();
  }
  return out;
}

std::uint64_t primitive_cycle_count(int d, int k) {
  auto mobius = [](int n) {
    int result = 1;
    for (int q = 2; q * q <= n; ++q) {
      if (n % q) continue;
      n /= q;
      if (n % q == 0) return 0;
      result = -result;
    }
    return n > 1 ? -result : result;
  };
  std::int64_t total = 0;
  for (int e = 1; e <= k; ++e) {
    if (k % e) continue;
    std::int64_t pw = 1;
    for (int i = 0; i < k / e; ++i) pw *= d;
    total += mobius(e) * pw;
  }
  return static_cast<std::uint64_t>(total / k);
}

}  // namespace nilcert
