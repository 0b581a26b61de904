#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace nilcert {

/// Returns true when p is 0 (the rationals) or a prime.
bool valid_characteristic(std::uint32_t p);

/// Element of the prime field of characteristic p: an exact rational when
/// p = 0, a residue in [0, p) otherwise.  Mixing characteristics throws.
class Scalar {
 public:
  Scalar() = default;
  Scalar(std::int64_t value, std::uint32_t p);
  Scalar(const mpq_class& value, std::uint32_t p);

  static Scalar zero(std::uint32_t p) { return Scalar(0, p); }
  static Scalar one(std::uint32_t p) { return Scalar(1, p); }

  /// Parses "n", "-n" or "a/b".
  static Scalar parse(std::string_view text, std::uint32_t p);

  std::uint32_t characteristic() const { return p_; }
  bool is_zero() const;
  bool is_one() const;

  /// Residue in [0, p); only meaningful when p > 0.
  std::uint32_t residue() const { return residue_; }
  /// Exact value when p = 0; the residue as an integer otherwise.
  mpq_class rational() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);
  Scalar inverse() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);

  /// Decimal integer or "a/b"; residues print as their representative.
  std::string to_string() const;

 private:
  void check_same(const Scalar& other) const;

  std::uint32_t p_ = 0;
  std::uint32_t residue_ = 0;
  mpq_class value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace nilcert
