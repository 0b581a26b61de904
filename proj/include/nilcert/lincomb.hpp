#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "nilcert/scalar.hpp"
#include "nilcert/word.hpp"

namespace nilcert {

/// Finite linear combination of words over the prime field of characteristic
/// p.  Zero coefficients are never stored.
class LinComb {
 public:
  explicit LinComb(std::uint32_t p = 0) : p_(p) {}
  static LinComb of(const Word& w, std::uint32_t p, std::int64_t coeff = 1);

  std::uint32_t characteristic() const { return p_; }
  const std::map<Word, Scalar>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  Scalar coeff(const Word& w) const;

  void add(const Word& w, const Scalar& c);
  void add(const Word& w, std::int64_t c) { add(w, Scalar(c, p_)); }

  /// All words share one multidegree (vacuous for zero).
  bool is_homogeneous() const;
  /// Multidegree of the (homogeneous, non-zero) combination over at least d letters.
  Multidegree mdeg(std::size_t d = 0) const;
  Letter max_letter() const;

  LinComb& operator+=(const LinComb& other);
  LinComb& operator-=(const LinComb& other);
  LinComb& operator*=(const Scalar& c);
  LinComb operator-() const;
  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(LinComb a, const Scalar& c) { return a *= c; }
  friend LinComb operator*(const Scalar& c, LinComb a) { return a *= c; }
  /// Noncommutative product (concatenation of words).
  friend LinComb operator*(const LinComb& a, const LinComb& b);
  friend bool operator==(const LinComb& a, const LinComb& b) { return a.p_ == b.p_ && a.terms_ == b.terms_; }

  /// Human-readable form, e.g. "x1 x2 - x2 x1"; "0" for zero.
  std::string str() const;

  /// Expression grammar: sums of products of scalars ("3", "-2/5"), letters
  /// (`x<i>` with optional `^e`) and parenthesised sub-expressions (with
  /// optional `^e`); `*` between factors is optional.  ParseError on failure.
  static LinComb parse(std::string_view text, std::uint32_t p);

 private:
  std::uint32_t p_;
  std::map<Word, Scalar> terms_;
};

/// [{"coeff": "a/b", "word": "x1^2 x2"}, ...]
nlohmann::json to_json(const LinComb& e);
LinComb lincomb_from_json(const nlohmann::json& j, std::uint32_t p);

}  // namespace nilcert
