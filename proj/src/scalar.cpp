#include "nilcert/scalar.hpp"

#include <stdexcept>

namespace nilcert {

namespace {

std::uint32_t reduce_mpz(const mpz_class& z, std::uint32_t p) {
  mpz_class r = z % p;
  if (r < 0) r += p;
  return static_cast<std::uint32_t>(r.get_ui());
}

std::uint32_t inverse_mod(std::uint32_t a, std::uint32_t p) {
  if (a == 0) throw std::domain_error("division by zero in GF(p)");
  std::int64_t t = 0, new_t = 1, r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

}  // namespace

bool valid_characteristic(std::uint32_t p) {
  if (p == 0) return true;
  if (p < 2) return false;
  for (std::uint32_t q = 2; static_cast<std::uint64_t>(q) * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

Scalar::Scalar(std::int64_t value, std::uint32_t p) : p_(p) {
  if (p == 0) {
    value_ = mpq_class(mpz_class(static_cast<long>(value)));
  } else {
    std::int64_t r = value % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    residue_ = static_cast<std::uint32_t>(r);
  }
}

Scalar::Scalar(const mpq_class& value, std::uint32_t p) : p_(p) {
  if (p == 0) {
    value_ = value;
    value_.canonicalize();
  } else {
    std::uint32_t num = reduce_mpz(value.get_num(), p);
    std::uint32_t den = reduce_mpz(value.get_den(), p);
    if (den == 0) throw std::domain_error("denominator vanishes modulo p");
    residue_ = static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(num) * inverse_mod(den, p) % p);
  }
}

Scalar Scalar::parse(std::string_view text, std::uint32_t p) {
  std::string s(text);
  auto bad = [&] { return std::invalid_argument("malformed scalar '" + s + "'"); };
  if (s.empty()) throw bad();
  auto check_int = [&](std::string_view part, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !part.empty() && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i >= part.size()) throw bad();
    for (; i < part.size(); ++i)
      if (part[i] < '0' || part[i] > '9') throw bad();
  };
  auto slash = s.find('/');
  mpq_class q;
  if (slash == std::string::npos) {
    check_int(s, true);
    q = mpq_class(mpz_class(s[0] == '+' ? s.substr(1) : s));
  } else {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    check_int(num, true);
    check_int(den, false);
    mpz_class d(den);
    if (d == 0) throw std::domain_error("zero denominator in '" + s + "'");
    q = mpq_class(mpz_class(num[0] == '+' ? num.substr(1) : num), d);
    q.canonicalize();
  }
  return Scalar(q, p);
}

bool Scalar::is_zero() const { return p_ == 0 ? value_ == 0 : residue_ == 0; }

bool Scalar::is_one() const { return p_ == 0 ? value_ == 1 : residue_ == 1 % p_; }

mpq_class Scalar::rational() const {
  if (p_ == 0) return value_;
  return mpq_class(residue_);
}

void Scalar::check_same(const Scalar& other) const {
  if (p_ != other.p_) throw std::invalid_argument("scalars of different characteristic");
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (p_ == 0)
    r.value_ = -value_;
  else
    r.residue_ = residue_ == 0 ? 0 : p_ - residue_;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& other) {
  check_same(other);
  if (p_ == 0)
    value_ += other.value_;
  else
    residue_ = static_cast<std::uint32_t>((static_cast<std::uint64_t>(residue_) + other.residue_) % p_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) { return *this += -other; }

Scalar& Scalar::operator*=(const Scalar& other) {
  check_same(other);
  if (p_ == 0)
    value_ *= other.value_;
  else
    residue_ = static_cast<std::uint32_t>(static_cast<std::uint64_t>(residue_) * other.residue_ % p_);
  return *this;
}

Scalar Scalar::inverse() const {
  Scalar r = *this;
  if (p_ == 0) {
    if (value_ == 0) throw std::domain_error("division by zero");
    r.value_ = 1 / value_;
  } else {
    r.residue_ = inverse_mod(residue_, p_);
  }
  return r;
}

Scalar& Scalar::operator/=(const Scalar& other) {
  check_same(other);
  return *this *= other.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.p_ != b.p_) return false;
  return a.p_ == 0 ? a.value_ == b.value_ : a.residue_ == b.residue_;
}

std::string Scalar::to_string() const {
  if (p_ != 0) return std::to_string(residue_);
  return value_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace nilcert
