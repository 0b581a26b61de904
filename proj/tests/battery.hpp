#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "nilcert/lincomb.hpp"

namespace battery {

struct Identity {
  std::string name;
  std::string expr;
  std::vector<std::uint32_t> chars;
};

inline std::string subst(std::string s, const std::string& from, const std::string& to) {
  for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size()) s.replace(pos, from.size(), to);
  return s;
}

inline int perm_sign(const std::vector<int>& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

// a_i = x_(i+1), x = x1
inline std::string perm_identity(const std::vector<int>& sigma, bool second_slot) {
  auto word = [&](const std::vector<int>& idx) {
    std::string a[4];
    for (int i = 0; i < 4; ++i) a[i] = "x" + std::to_string(idx[static_cast<std::size_t>(i)] + 2);
    return second_slot ? a[0] + " " + a[1] + " x1^2 " + a[2] + " " + a[3] : a[0] + " x1^2 " + a[1] + " " + a[2] + " " + a[3];
  };
  std::string lhs = word({0, 1, 2, 3});
  std::string rhs = word(sigma);
  return lhs + (perm_sign(sigma) > 0 ? " - " : " + ") + rhs;
}

inline std::vector<Identity> identities() {
  const std::string W = "(x1^2 x2^2 x1 x2)";
  std::vector<Identity> out;
  const std::vector<std::uint32_t> all{0, 2, 3, 5}, not3{0, 2, 5}, big{0, 5};
  out.push_back({"square of xy", "(x1 x2)^2 - x2^2 x1^2", all});
  out.push_back({"x^2 a y^2", "x1^2 x3 x2^2", not3});
  out.push_back({"x^2 ab y^2", "x1^2 x3 x4 x2^2", not3});
  out.push_back({"x^2 y a x sum", "2 x1^2 x2 x3 x1 + x1^2 x2 x1 x3 + x2 x1^2 x3 x1", all});
  out.push_back({"x^2 then four letters", "x1^2 x2 x3 x4 x5", big});
  out.push_back({"four letters then x^2", "x2 x3 x4 x5 x1^2", big});
  out.push_back({"swap before x^2", "x2 x3 x1^2 x4 x5 + x3 x2 x1^2 x4 x5", big});
  out.push_back({"swap after x^2", "x2 x3 x1^2 x4 x5 + x2 x3 x1^2 x5 x4", big});
  std::vector<int> sigma{0, 1, 2, 3};
  do {
    std::string tag;
    for (int v : sigma) tag += std::to_string(v + 1);
    out.push_back({"permuted, x^2 second " + tag, perm_identity(sigma, false), big});
    out.push_back({"permuted, x^2 third " + tag, perm_identity(sigma, true), big});
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  out.push_back({"W plus its mirror", "x1^2 x2^2 x1 x2 + x2^2 x1^2 x2 x1", all});

  const std::vector<std::uint32_t> gf3{3};
  auto st7 = [&](std::string name, std::string lhs, std::string rhs) {
    out.push_back({"W table " + name, lhs + " - (" + subst(rhs, "W", W) + ")", gf3});
  };
  // x = x1, y = x2, a = x3, b = x4
  st7("x2y2axy", "x1^2 x2^2 x3 x1 x2", "-x3 W - W x3");
  st7("x2y2ayx", "x1^2 x2^2 x3 x2 x1", "x3 W - W x3");
  st7("x2ay2xy", "x1^2 x3 x2^2 x1 x2", "x3 W");
  st7("x2y2xay", "x1^2 x2^2 x1 x3 x2", "W x3");
  st7("x2axy2by T3", "x1^2 x3 x1 x2^2 x4 x2", "x3 x4 W + W x3 x4 - x4 x3 W - W x4 x3");
  st7("x2axy2by", "x1^2 x3 x1 x2^2 x4 x2", "-x3 x4 W - W x3 x4 + x3 W x4 + x4 W x3");
  st7("x2ay2bxy", "x1^2 x3 x2^2 x4 x1 x2", "x3 x4 W - W x3 x4 + x4 W x3");
  st7("x2ay2xby", "x1^2 x3 x2^2 x1 x4 x2", "-x3 x4 W - W x3 x4 - x3 W x4 + x4 W x3");
  st7("x2y2axby", "x1^2 x2^2 x3 x1 x4 x2", "-x3 x4 W + W x3 x4 + x4 W x3");
  st7("x2ay2byx", "x1^2 x3 x2^2 x4 x2 x1", "-W x3 x4 + x4 W x3");
  st7("x2y2aybx", "x1^2 x2^2 x3 x2 x4 x1", "x3 x4 W - x4 W x3");

  // relations of x^2 with a literal word V in place of W, x = x3, p = 3
  for (const std::string& v : {std::string("(x1 x2)"), std::string("(x1^2 x2)")}) {
    auto f = [&](std::string s) { return subst(s, "V", v); };
    out.push_back({"xxVVx + xxVxV, V=" + v, f("x3^2 V^2 x3 + x3^2 V x3 V"), gf3});
    out.push_back({"xxVVx + VxxVx, V=" + v, f("x3^2 V^2 x3 + V x3^2 V x3"), gf3});
    out.push_back({"VxxVx - xxVxV, V=" + v, f("V x3^2 V x3 - x3^2 V x3 V"), gf3});
    out.push_back({"x V^3 - V^3 x, V=" + v, f("x3 V^3 - V^3 x3"), gf3});
    out.push_back({"xxVVx - 2 xxVxV, V=" + v, f("x3^2 V^2 x3 - 2 x3^2 V x3 V"), gf3});
    out.push_back({"VxxVx - xxVxV again, V=" + v, f("V x3^2 V x3 - x3^2 V x3 V"), gf3});
    out.push_back({"xxVxV - xxVxV, V=" + v, f("x3^2 V x3 V - x3^2 V x3 V"), gf3});
    out.push_back({"Vxx x V, V=" + v, f("V x3^2 x3 V"), gf3});
  }
  return out;
}

// -abcW - bcaW + abWc + acWb + bcWa + aWbc - aWcb - Wabc, a,b,c = x3,x4,x5
inline std::string flagship() {
  return subst("-x3 x4 x5 W - x4 x5 x3 W + x3 x4 W x5 + x3 x5 W x4 + x4 x5 W x3 + x3 W x4 x5 - x3 W x5 x4 - W x3 x4 x5", "W",
               "(x1^2 x2^2 x1 x2)");
}

}  // namespace battery
