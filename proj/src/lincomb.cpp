#include "nilcert/lincomb.hpp"

#include <cctype>
#include <stdexcept>

namespace nilcert {

LinComb LinComb::of(const Word& w, std::uint32_t p, std::int64_t coeff) {
  LinComb e(p);
  e.add(w, coeff);
  return e;
}

Scalar LinComb::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Scalar::zero(p_) : it->second;
}

void LinComb::add(const Word& w, const Scalar& c) {
  if (c.characteristic() != p_) throw std::invalid_argument("coefficient of wrong characteristic");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

bool LinComb::is_homogeneous() const {
  if (terms_.empty()) return true;
  Letter top = max_letter();
  Multidegree first = nilcert::mdeg(terms_.begin()->first, static_cast<std::size_t>(top));
  for (const auto& [w, c] : terms_)
    if (!(nilcert::mdeg(w, static_cast<std::size_t>(top)) == first)) return false;
  return true;
}

Multidegree LinComb::mdeg(std::size_t d) const {
  if (terms_.empty()) throw std::invalid_argument("multidegree of the zero combination");
  if (!is_homogeneous()) throw std::invalid_argument("inhomogeneous combination: " + str());
  return nilcert::mdeg(terms_.begin()->first, std::max(d, static_cast<std::size_t>(max_letter())));
}

Letter LinComb::max_letter() const {
  Letter m = 0;
  for (const auto& [w, c] : terms_) m = std::max(m, w.max_letter());
  return m;
}

LinComb& LinComb::operator+=(const LinComb& other) {
  if (other.p_ != p_) throw std::invalid_argument("combinations of different characteristic");
  for (const auto& [w, c] : other.terms_) add(w, c);
  return *this;
}

LinComb& LinComb::operator-=(const LinComb& other) {
  if (other.p_ != p_) throw std::invalid_argument("combinations of different characteristic");
  for (const auto& [w, c] : other.terms_) add(w, -c);
  return *this;
}

LinComb& LinComb::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

LinComb LinComb::operator-() const {
  LinComb r = *this;
  for (auto& [w, v] : r.terms_) v = -v;
  return r;
}

LinComb operator*(const LinComb& a, const LinComb& b) {
  if (a.p_ != b.p_) throw std::invalid_argument("combinations of different characteristic");
  LinComb r(a.p_);
  for (const auto& [u, cu] : a.terms_)
    for (const auto& [v, cv] : b.terms_) r.add(u + v, cu * cv);
  return r;
}

std::string LinComb::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : terms_) {
    std::string cs = c.to_string();
    bool negative = p_ == 0 && !cs.empty() && cs[0] == '-';
    if (negative) cs.erase(0, 1);
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    bool unit = cs == "1";
    if (!unit) out += cs;
    if (!w.empty()) {
      if (!unit) out += ' ';
      out += w.str();
    } else if (unit) {
      out += "1";
    }
  }
  return out;
}

namespace {

class ExpressionParser {
 public:
  ExpressionParser(std::string_view text, std::uint32_t p) : text_(text), p_(p) {}

  LinComb parse() {
    skip_ws();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    LinComb e = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool at_factor_start() {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == 'x' || c == '(' || std::isdigit(static_cast<unsigned char>(c));
  }

  LinComb expr() {
    LinComb total(p_);
    bool negate = false;
    if (peek('-')) {
      negate = true;
      ++pos_;
    } else if (peek('+')) {
      ++pos_;
    }
    total = term();
    if (negate) total = -total;
    while (true) {
      if (peek('+')) {
        ++pos_;
        total += term();
      } else if (peek('-')) {
        ++pos_;
        total -= term();
      } else {
        break;
      }
    }
    return total;
  }

  LinComb term() {
    if (!at_factor_start()) throw ParseError("expected a term", pos_);
    LinComb t = LinComb::of(Word(), p_);
    while (true) {
      t = t * factor();
      if (peek('*')) {
        ++pos_;
        if (!at_factor_start()) throw ParseError("expected a factor after '*'", pos_);
        continue;
      }
      if (!at_factor_start()) break;
    }
    return t;
  }

  long number() {
    std::size_t start = pos_;
    long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_] - '0');
      if (v > 1'000'000'000L) throw ParseError("number too large", start);
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected a number", start);
    return v;
  }

  int exponent() {
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_ws();
      long e = number();
      if (e > 64) throw ParseError("exponent too large", pos_);
      return static_cast<int>(e);
    }
    return 1;
  }

  LinComb factor() {
    skip_ws();
    std::size_t start = pos_;
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      LinComb inner = expr();
      if (!peek(')')) throw ParseError("expected ')'", pos_);
      ++pos_;
      int e = exponent();
      LinComb r = LinComb::of(Word(), p_);
      for (int k = 0; k < e; ++k) r = r * inner;
      return r;
    }
    if (c == 'x') {
      ++pos_;
      long x = number();
      if (x < 1 || x > kMaxLetter) throw ParseError("letter index out of range", start);
      int e = exponent();
      return LinComb::of(Word({static_cast<Letter>(x)}).power(e), p_);
    }
    long num = number();
    long den = 1;
    if (pos_ < text_.size() && text_[pos_] == '/') {
      ++pos_;
      den = number();
      if (den == 0) throw ParseError("zero denominator", start);
    }
    Scalar s;
    try {
      s = Scalar(mpq_class(mpz_class(num), mpz_class(den)), p_);
    } catch (const std::domain_error&) {
      throw ParseError("denominator vanishes in this characteristic", start);
    }
    LinComb r(p_);
    r.add(Word(), s);
    return r;
  }

  std::string_view text_;
  std::uint32_t p_;
  std::size_t pos_ = 0;
};

}  // namespace

LinComb LinComb::parse(std::string_view text, std::uint32_t p) { return ExpressionParser(text, p).parse(); }

nlohmann::json to_json(const LinComb& e) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [w, c] : e.terms()) arr.push_back({{"coeff", c.to_string()}, {"word", w.str()}});
  return arr;
}

LinComb lincomb_from_json(const nlohmann::json& j, std::uint32_t p) {
  if (!j.is_array()) throw std::invalid_argument("combination JSON must be an array");
  LinComb e(p);
  for (const auto& t : j) {
    const auto& coeff = t.at("coeff");
    Scalar c = coeff.is_number_integer() ? Scalar(coeff.get<std::int64_t>(), p)
                                         : Scalar::parse(coeff.get<std::string>(), p);
    e.add(Word::parse(t.at("word").get<std::string>()), c);
  }
  return e;
}

}  // namespace nilcert
