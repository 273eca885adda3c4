#pragma once

// Exact arithmetic in cyclotomic fields Q(zeta_m).
//
// A value is a rational polynomial in zeta_m reduced modulo the m-th
// cyclotomic polynomial, together with its order m. Orders are not
// normalized downward; mixed-order arithmetic lifts to the lcm. Values of
// different orders compare equal iff they agree after lifting.

#include "wqh/rational.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wqh {

namespace detail {

using Poly = std::vector<Rat>;  // coeff[i] multiplies x^i

inline void poly_trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// In-place remainder of a modulo monic b; degree(a) becomes < degree(b).
inline void poly_mod_monic(Poly& a, const Poly& b) {
  const std::size_t db = b.size() - 1;
  poly_trim(a);
  while (a.size() > db) {
    Rat lead = a.back();
    std::size_t shift = a.size() - 1 - db;
    if (lead != 0) {
      for (std::size_t i = 0; i < db; ++i) a[shift + i] -= lead * b[i];
    }
    a.pop_back();
    poly_trim(a);
  }
}

// Exact quotient a / b for monic b dividing a.
inline Poly poly_div_exact_monic(Poly a, const Poly& b) {
  const std::size_t db = b.size() - 1;
  poly_trim(a);
  if (a.empty()) return {};
  Poly q(a.size() - db, Rat(0));
  while (a.size() > db) {
    Rat lead = a.back();
    std::size_t shift = a.size() - 1 - db;
    q[shift] = lead;
    if (lead != 0) {
      for (std::size_t i = 0; i < db; ++i) a[shift + i] -= lead * b[i];
    }
    a.pop_back();
    poly_trim(a);
  }
  if (!a.empty()) throw std::logic_error("poly_div_exact_monic: nonzero remainder");
  return q;
}

inline const Poly& cyclotomic_poly(long m) {
  static std::map<long, Poly> cache;
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  Poly f(static_cast<std::size_t>(m) + 1, Rat(0));
  f[0] = -1;
  f[static_cast<std::size_t>(m)] = 1;  // x^m - 1
  for (long d = 1; d < m; ++d) {
    if (m % d == 0) f = poly_div_exact_monic(std::move(f), cyclotomic_poly(d));
  }
  return cache.emplace(m, std::move(f)).first->second;
}

inline long euler_phi_deg(long m) {
  return static_cast<long>(cyclotomic_poly(m).size()) - 1;
}

inline const std::vector<std::complex<double>>& root_table(long m) {
  static std::map<long, std::vector<std::complex<double>>> cache;
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> t(static_cast<std::size_t>(m));
  for (long k = 0; k < m; ++k)
    t[static_cast<std::size_t>(k)] =
        std::polar(1.0, 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(m));
  return cache.emplace(m, std::move(t)).first->second;
}

}  // namespace detail

enum class SignCert { Negative = -1, Zero = 0, Positive = 1, Indeterminate = 2 };

struct EmbedVal {
  std::complex<double> z;
  double err;  // certified bound on |z - exact value|
};

class Cyc {
 public:
  Cyc() : m_(1) {}
  explicit Cyc(long n) : m_(1) {
    if (n != 0) c_ = {Rat(n)};
  }
  static Cyc from_rat(const Rat& r) {
    Cyc x;
    if (r != 0) {
      Rat c = r;
      c.canonicalize();  // callers may pass unreduced num/den pairs
      x.c_ = {std::move(c)};
    }
    return x;
  }
  // zeta_m^k
  static Cyc root(long m, long k) {
    if (m < 1) throw std::invalid_argument("root order must be positive");
    k %= m;
    if (k < 0) k += m;
    detail::Poly raw(static_cast<std::size_t>(k) + 1, Rat(0));
    raw[static_cast<std::size_t>(k)] = 1;
    return Cyc(m, std::move(raw));
  }
  static Cyc zero() { return Cyc(); }
  static Cyc one() { return Cyc(1); }

  long order() const { return m_; }
  bool is_zero() const { return c_.empty(); }
  bool is_rational() const { return c_.size() <= 1; }
  Rat rational_value() const {
    if (!is_rational()) throw std::logic_error("not a rational value");
    return c_.empty() ? Rat(0) : c_[0];
  }
  const std::vector<Rat>& coeffs() const { return c_; }

  Cyc lifted_to(long M) const {
    if (M == m_) return *this;
    if (M % m_ != 0) throw std::invalid_argument("lift target not a multiple of order");
    long s = M / m_;
    detail::Poly raw;
    raw.resize(c_.empty() ? 1 : (c_.size() - 1) * static_cast<std::size_t>(s) + 1, Rat(0));
    for (std::size_t k = 0; k < c_.size(); ++k) raw[k * static_cast<std::size_t>(s)] = c_[k];
    return Cyc(M, std::move(raw));
  }

  // Rewrites in order d if the value lies in Q(zeta_d), d | current order.
  // Returns false if the value does not lie in the smaller field.
  bool try_lower_order(long d, Cyc* out) const {
    if (m_ % d != 0) return false;
    long phi_d = detail::euler_phi_deg(d);
    // solve sum_j b_j * lift(zeta_d^j) = *this in canonical coordinates
    long phi_m = detail::euler_phi_deg(m_);
    std::vector<detail::Poly> basis;
    basis.reserve(static_cast<std::size_t>(phi_d));
    for (long j = 0; j < phi_d; ++j) {
      Cyc b = Cyc::root(d, j).lifted_to(m_);
      detail::Poly col(static_cast<std::size_t>(phi_m), Rat(0));
      for (std::size_t i = 0; i < b.c_.size(); ++i) col[i] = b.c_[i];
      basis.push_back(std::move(col));
    }
    // gaussian elimination on the phi_m x phi_d system
    std::vector<detail::Poly> A = basis;
    detail::Poly rhs(static_cast<std::size_t>(phi_m), Rat(0));
    for (std::size_t i = 0; i < c_.size(); ++i) rhs[i] = c_[i];
    std::vector<long> pivot_row(static_cast<std::size_t>(phi_d), -1);
    long row = 0;
    for (long col = 0; col < phi_d && row < phi_m; ++col) {
      long pr = -1;
      for (long r = row; r < phi_m; ++r)
        if (A[static_cast<std::size_t>(col)][static_cast<std::size_t>(r)] != 0) { pr = r; break; }
      if (pr < 0) continue;
      for (long j = 0; j < phi_d; ++j)
        std::swap(A[static_cast<std::size_t>(j)][static_cast<std::size_t>(pr)],
                  A[static_cast<std::size_t>(j)][static_cast<std::size_t>(row)]);
      std::swap(rhs[static_cast<std::size_t>(pr)], rhs[static_cast<std::size_t>(row)]);
      Rat inv = 1 / A[static_cast<std::size_t>(col)][static_cast<std::size_t>(row)];
      for (long j = 0; j < phi_d; ++j) A[static_cast<std::size_t>(j)][static_cast<std::size_t>(row)] *= inv;
      rhs[static_cast<std::size_t>(row)] *= inv;
      for (long r = 0; r < phi_m; ++r) {
        if (r == row) continue;
        Rat f = A[static_cast<std::size_t>(col)][static_cast<std::size_t>(r)];
        if (f == 0) continue;
        for (long j = 0; j < phi_d; ++j)
          A[static_cast<std::size_t>(j)][static_cast<std::size_t>(r)] -=
              f * A[static_cast<std::size_t>(j)][static_cast<std::size_t>(row)];
        rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(row)];
      }
      pivot_row[static_cast<std::size_t>(col)] = row;
      ++row;
    }
    detail::Poly sol(static_cast<std::size_t>(phi_d), Rat(0));
    for (long j = 0; j < phi_d; ++j)
      if (pivot_row[static_cast<std::size_t>(j)] >= 0)
        sol[static_cast<std::size_t>(j)] = rhs[static_cast<std::size_t>(pivot_row[static_cast<std::size_t>(j)])];
    Cyc cand(d, detail::Poly(sol));
    if (cand.lifted_to(m_) == *this) {
      if (out) *out = cand;
      return true;
    }
    return false;
  }

  friend Cyc operator+(const Cyc& a, const Cyc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    long M = std::lcm(a.m_, b.m_);
    Cyc x = a.lifted_to(M), y = b.lifted_to(M);
    if (x.c_.size() < y.c_.size()) x.c_.resize(y.c_.size(), Rat(0));
    for (std::size_t i = 0; i < y.c_.size(); ++i) x.c_[i] += y.c_[i];
    detail::poly_trim(x.c_);
    return x;
  }
  friend Cyc operator-(const Cyc& a, const Cyc& b) { return a + (-b); }
  Cyc operator-() const {
    Cyc x = *this;
    for (auto& v : x.c_) v = -v;
    return x;
  }
  friend Cyc operator*(const Cyc& a, const Cyc& b) {
    if (a.is_zero() || b.is_zero()) return Cyc();
    if (a.is_rational()) {
      Cyc x = b;
      for (auto& v : x.c_) v *= a.c_[0];
      return x;
    }
    if (b.is_rational()) return b * a;
    long M = std::lcm(a.m_, b.m_);
    Cyc x = a.lifted_to(M), y = b.lifted_to(M);
    detail::Poly prod(x.c_.size() + y.c_.size() - 1, Rat(0));
    for (std::size_t i = 0; i < x.c_.size(); ++i) {
      if (x.c_[i] == 0) continue;
      for (std::size_t j = 0; j < y.c_.size(); ++j) {
        if (y.c_[j] == 0) continue;
        std::size_t k = i + j;
        if (k >= static_cast<std::size_t>(M)) k -= static_cast<std::size_t>(M);
        prod[k] += x.c_[i] * y.c_[j];
      }
    }
    return Cyc(M, std::move(prod));
  }
  Cyc& operator+=(const Cyc& o) { return *this = *this + o; }
  Cyc& operator-=(const Cyc& o) { return *this = *this - o; }
  Cyc& operator*=(const Cyc& o) { return *this = *this * o; }

  Cyc inverse() const {
    if (is_zero()) throw std::domain_error("division by zero");
    if (is_rational()) return from_rat_order(1 / c_[0], m_);
    // extended euclid against the cyclotomic polynomial; it is irreducible
    // over Q, so the gcd is a nonzero constant
    detail::Poly r0 = detail::cyclotomic_poly(m_), r1 = c_;
    detail::Poly s0, s1 = {Rat(1)};
    while (r1.size() > 1) {
      // divide r0 by r1
      detail::Poly q(r0.size() > r1.size() ? r0.size() - r1.size() + 1 : 1, Rat(0));
      detail::Poly rem = r0;
      Rat lead_inv = 1 / r1.back();
      while (rem.size() >= r1.size() && !rem.empty()) {
        Rat f = rem.back() * lead_inv;
        std::size_t shift = rem.size() - r1.size();
        q[shift] = f;
        for (std::size_t i = 0; i < r1.size(); ++i) rem[shift + i] -= f * r1[i];
        detail::poly_trim(rem);
        if (rem.size() < r1.size()) break;
      }
      // s2 = s0 - q*s1
      detail::Poly qs(q.size() + (s1.empty() ? 1 : s1.size()) - 1, Rat(0));
      for (std::size_t i = 0; i < q.size(); ++i) {
        if (q[i] == 0) continue;
        for (std::size_t j = 0; j < s1.size(); ++j) qs[i + j] += q[i] * s1[j];
      }
      detail::Poly s2 = s0;
      if (s2.size() < qs.size()) s2.resize(qs.size(), Rat(0));
      for (std::size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
      detail::poly_trim(s2);
      r0 = std::move(r1);
      r1 = std::move(rem);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (r1.empty()) throw std::logic_error("cyclotomic inverse: unexpected zero gcd");
    Rat g = 1 / r1[0];
    for (auto& v : s1) v *= g;
    return Cyc(m_, std::move(s1));
  }
  friend Cyc operator/(const Cyc& a, const Cyc& b) { return a * b.inverse(); }

  Cyc conj() const {
    if (is_rational()) return *this;
    detail::Poly raw(static_cast<std::size_t>(m_), Rat(0));
    for (std::size_t k = 0; k < c_.size(); ++k) {
      std::size_t nk = (k == 0) ? 0 : static_cast<std::size_t>(m_) - k;
      raw[nk] += c_[k];
    }
    return Cyc(m_, std::move(raw));
  }

  Cyc pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    Cyc r = one(), b = *this;
    while (n > 0) {
      if (n & 1) r *= b;
      b *= b;
      n >>= 1;
    }
    return r;
  }

  friend bool operator==(const Cyc& a, const Cyc& b) {
    if (a.m_ == b.m_) return a.c_ == b.c_;
    long M = std::lcm(a.m_, b.m_);
    return a.lifted_to(M).c_ == b.lifted_to(M).c_;
  }
  friend bool operator!=(const Cyc& a, const Cyc& b) { return !(a == b); }

  bool is_real() const { return conj() == *this; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

  EmbedVal embed() const {
    const auto& roots = detail::root_table(m_);
    std::complex<double> z(0.0, 0.0);
    double mag = 0.0;
    long terms = 0;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k] == 0) continue;
      double ck = rat_double(c_[k]);
      z += ck * roots[k];
      mag += std::fabs(ck);
      ++terms;
    }
    // per-term root and conversion error plus naive summation accumulation
    double err = mag * static_cast<double>(terms + 8) * 8.0 * DBL_EPSILON;
    return {z, err};
  }

  // Certified sign for real values; Indeterminate when the floating bound
  // cannot separate the value from zero.
  SignCert sign_real() const {
    if (is_zero()) return SignCert::Zero;
    if (!is_real()) return SignCert::Indeterminate;
    EmbedVal e = embed();
    if (e.z.real() > e.err) return SignCert::Positive;
    if (e.z.real() < -e.err) return SignCert::Negative;
    return SignCert::Indeterminate;
  }
  // Positive means certified positive real, Negative means certified not a
  // positive real (including zero and non-real values).
  SignCert is_positive_real() const {
    if (is_zero() || !is_real()) return SignCert::Negative;
    return sign_real();
  }

  std::string str() const {
    std::ostringstream os;
    os << "cyc(" << m_ << ";";
    if (c_.empty()) {
      os << " 0";
    } else {
      for (std::size_t k = 0; k < c_.size(); ++k) {
        os << (k ? ", " : " ") << rat_str(c_[k]);
      }
    }
    os << ")";
    return os.str();
  }

  static Cyc parse(const std::string& s);

 private:
  Cyc(long m, detail::Poly raw) : m_(m) {
    // fold exponents >= m, then reduce modulo the cyclotomic polynomial
    if (raw.size() > static_cast<std::size_t>(m)) {
      detail::Poly folded(static_cast<std::size_t>(m), Rat(0));
      for (std::size_t k = 0; k < raw.size(); ++k) folded[k % static_cast<std::size_t>(m)] += raw[k];
      raw = std::move(folded);
    }
    detail::poly_mod_monic(raw, detail::cyclotomic_poly(m));
    c_ = std::move(raw);
  }
  static Cyc from_rat_order(const Rat& r, long m) {
    Cyc x;
    x.m_ = m;
    if (r != 0) x.c_ = {r};
    return x;
  }

  long m_;
  detail::Poly c_;
};

inline Cyc Cyc::parse(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) throw std::invalid_argument("empty scalar literal");
  if (s.compare(a, 4, "cyc(") != 0) {
    // plain rational literal
    return Cyc::from_rat(rat_parse(s));
  }
  std::size_t semi = s.find(';', a);
  std::size_t close = s.rfind(')');
  if (semi == std::string::npos || close == std::string::npos || close < semi)
    throw std::invalid_argument("bad cyclotomic literal: " + s);
  long m = std::stol(s.substr(a + 4, semi - a - 4));
  if (m < 1) throw std::invalid_argument("bad cyclotomic order in: " + s);
  detail::Poly raw;
  std::string body = s.substr(semi + 1, close - semi - 1);
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t comma = body.find(',', pos);
    std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.find_first_not_of(" \t") != std::string::npos) raw.push_back(rat_parse(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return Cyc(m, std::move(raw));
}

// quantum integer [k]_q = (q^k - q^-k)/(q - q^-1) as a Laurent sum
inline Cyc q_int(long k, const Cyc& q) {
  if (k < 0) return -q_int(-k, q);
  Cyc s;
  for (long i = 0; i < k; ++i) s += q.pow(k - 1 - 2 * i);
  return s;
}

inline Cyc q_factorial(long n, const Cyc& q) {
  Cyc r = Cyc::one();
  for (long j = 2; j <= n; ++j) r *= q_int(j, q);
  return r;
}

inline Cyc q_binom(long n, long k, const Cyc& q) {
  if (k < 0 || k > n) return Cyc::zero();
  return q_factorial(n, q) / (q_factorial(k, q) * q_factorial(n - k, q));
}

}  // namespace wqh
