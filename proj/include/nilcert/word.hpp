#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace nilcert {

/// Letters are 1-based indices x1, x2, ... into an alphabet of size d.
using Letter = int;

inline constexpr int kMaxLetter = 255;

/// Thrown when a component would exceed the configured column budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown by the text grammars; carries the byte offset of the failure.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A monomial in the letters, stored one letter per byte.  Words are
/// ordered length-first, then lexicographically on letter indices.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters);
  explicit Word(const std::vector<Letter>& letters);

  /// Parses the word grammar: tokens `x<i>` with optional `^<e>`.
  static Word parse(std::string_view text);
  /// Wraps raw bytes (each byte one letter index); no validation.
  static Word from_bytes(std::string bytes) {
    Word w;
    w.letters_ = std::move(bytes);
    return w;
  }

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return static_cast<unsigned char>(letters_[i]); }
  /// Largest letter index occurring (0 for the empty word).
  Letter max_letter() const;
  int degree_in(Letter x) const;
  bool contains(Letter x) const { return degree_in(x) > 0; }

  Word substr(std::size_t pos, std::size_t len = std::string::npos) const {
    return from_bytes(letters_.substr(pos, len));
  }
  Word& operator+=(const Word& other) {
    letters_ += other.letters_;
    return *this;
  }
  Word& push_back(Letter x);
  friend Word operator+(Word a, const Word& b) { return a += b; }
  /// w^e for e >= 0.
  Word power(int e) const;
  /// Cyclic shift: letters [k, n) followed by [0, k).
  Word rotate(std::size_t k) const;
  /// Deletes every occurrence of x.
  Word without(Letter x) const;

  const std::string& bytes() const { return letters_; }

  /// Exponent syntax, e.g. "x1^2 x2"; the empty word prints as "1".
  std::string str() const;

  friend bool operator==(const Word& a, const Word& b) { return a.letters_ == b.letters_; }
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  std::string letters_;
};

std::ostream& operator<<(std::ostream& os, const Word& w);

/// Letter-count vector (lambda_1, ..., lambda_d).
class Multidegree {
 public:
  Multidegree() = default;
  explicit Multidegree(std::vector<int> counts);
  Multidegree(std::initializer_list<int> counts) : Multidegree(std::vector<int>(counts)) {}

  std::size_t letters() const { return counts_.size(); }
  int operator[](std::size_t i) const { return i < counts_.size() ? counts_[i] : 0; }
  /// Count of letter x (1-based).
  int of(Letter x) const { return (*this)[static_cast<std::size_t>(x - 1)]; }
  int total() const;
  const std::vector<int>& counts() const { return counts_; }
  bool is_multilinear() const;
  /// Copy padded or trimmed (trailing zeros only) to d entries.
  Multidegree resized(std::size_t d) const;
  /// Non-increasing rearrangement with trailing zeros dropped.
  Multidegree sorted() const;
  Multidegree with_count(Letter x, int count) const;

  friend Multidegree operator+(const Multidegree& a, const Multidegree& b);
  /// Equality ignores trailing zeros.
  friend bool operator==(const Multidegree& a, const Multidegree& b);
  friend bool operator<(const Multidegree& a, const Multidegree& b) {
    return a.trimmed() < b.trimmed();
  }

  std::string str() const;

 private:
  std::vector<int> trimmed() const;
  std::vector<int> counts_;
};

std::ostream& operator<<(std::ostream& os, const Multidegree& m);

/// Default cap on the number of words a component may have.
inline constexpr std::size_t kDefaultColumnBudget = 2'000'000;

Multidegree mdeg(const Word& w, std::size_t d = 0);

/// Number of words of multidegree m, or SIZE_MAX on overflow.
std::size_t word_count(const Multidegree& m);

/// All words of multidegree m in increasing order.  Throws BudgetExceeded
/// when their number exceeds budget.
std::vector<Word> enumerate_words(const Multidegree& m, std::size_t budget = kDefaultColumnBudget);

/// Visits the words of multidegree m in increasing order without storing them.
void for_each_word(const Multidegree& m, const std::function<void(const Word&)>& visit);

/// Canonical with respect to x: x-free, x once, x^2 as a block, or x^2 u x
/// with u non-empty and x-free.
bool is_canonical_in(const Word& w, Letter x);
bool is_canonical(const Word& w);

/// Least rotation of a non-empty word.
Word cyclic_representative(const Word& w);
/// True when w is not a proper power of a shorter word.
bool is_primitive(const Word& w);

/// Lyndon words of length k over x1..xd, one per primitive cyclic class.
std::vector<Word> primitive_cycles(int d, int k);

/// Number of primitive cycles by the necklace formula.
std::uint64_t primitive_cycle_count(int d, int k);

}  // namespace nilcert

template <>
struct std::hash<nilcert::Word> {
  std::size_t operator()(const nilcert::Word& w) const noexcept { return std::hash<std::string>{}(w.bytes()); }
};
