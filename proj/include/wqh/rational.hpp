#pragma once

// Exact rational scalars on top of GMP.

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>

namespace wqh {

using Rat = mpq_class;

inline std::string rat_str(const Rat& r) { return r.get_str(); }

// mpq_class arithmetic assumes canonical operands; the two-argument
// constructor does not reduce, so build fractions through this instead.
inline Rat rat_frac(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Accepts "a" or "a/b" with optional sign and surrounding whitespace.
inline Rat rat_parse(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  std::string t = s.substr(a, b - a);
  if (t.empty()) throw std::invalid_argument("empty rational literal");
  for (std::size_t i = 0; i < t.size(); ++i) {
    char c = t[i];
    bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' ||
              ((c == '-' || c == '+') && (i == 0 || t[i - 1] == '/'));
    if (!ok) throw std::invalid_argument("bad rational literal: " + s);
  }
  Rat r(t);
  r.canonicalize();
  return r;
}

inline double rat_double(const Rat& r) { return r.get_d(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

}  // namespace wqh
