#pragma once

#include <cstdint>
#include <stdexcept>

#include <gmpxx.h>

#include "nilcert/scalar.hpp"

namespace nilcert {

/// GF(p) with elements stored as residues in [0, p).
struct PrimeField {
  using Elem = std::uint32_t;

  explicit PrimeField(std::uint32_t prime) : p(prime) {
    if (prime < 2 || !valid_characteristic(prime)) throw std::invalid_argument("PrimeField needs a prime");
  }

  std::uint32_t characteristic() const { return p; }
  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  Elem from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p);
    return static_cast<Elem>(r < 0 ? r + p : r);
  }
  Elem from_scalar(const Scalar& s) const { return s.residue(); }
  Scalar to_scalar(Elem a) const { return Scalar(static_cast<std::int64_t>(a), p); }
  bool is_zero(const Elem& a) const { return a == 0; }
  Elem add(Elem a, Elem b) const {
    std::uint64_t s = static_cast<std::uint64_t>(a) + b;
    return static_cast<Elem>(s >= p ? s - p : s);
  }
  Elem sub(Elem a, Elem b) const { return a >= b ? a - b : static_cast<Elem>(static_cast<std::uint64_t>(a) + p - b); }
  Elem neg(Elem a) const { return a == 0 ? 0 : p - a; }
  Elem mul(Elem a, Elem b) const { return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % p); }
  Elem inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    std::int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
      std::int64_t q = r / nr;
      t -= q * nt;
      std::swap(t, nt);
      r -= q * nr;
      std::swap(r, nr);
    }
    return static_cast<Elem>(t < 0 ? t + p : t);
  }
  // a - f * b
  Elem submul(Elem a, Elem f, Elem b) const { return sub(a, mul(f, b)); }

  std::uint32_t p;
};

/// The rationals, exact.
struct RationalField {
  using Elem = mpq_class;

  std::uint32_t characteristic() const { return 0; }
  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(std::int64_t v) const { return Elem(mpz_class(static_cast<long>(v))); }
  Elem from_scalar(const Scalar& s) const { return s.rational(); }
  Scalar to_scalar(const Elem& a) const { return Scalar(a, 0); }
  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem inv(const Elem& a) const {
    if (sgn(a) == 0) throw std::domain_error("inverse of zero");
    return 1 / a;
  }
  Elem submul(const Elem& a, const Elem& f, const Elem& b) const { return a - f * b; }
};

}  // namespace nilcert
