#pragma once

// Based rings and type-A Verlinde data: fusion rules, Frobenius-Perron
// dimensions with certified intervals, weak dimension functions, quantum
// dimensions, ribbon values, and modular S/T matrices.

#include "wqh/matrix.hpp"
#include "wqh/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace wqh {

// ---------------------------------------------------------------------------
// based rings

struct BasedRing {
  std::vector<std::string> labels;
  long unit = 0;
  std::vector<long> dual;  // dual[i] = index of the dual label
  std::vector<long> n;     // n[(i*size+j)*size+k] = N_{ij}^k

  long size() const { return static_cast<long>(labels.size()); }

  long coeff(long i, long j, long k) const {
    long s = size();
    return n[static_cast<std::size_t>((i * s + j) * s + k)];
  }
  void set_coeff(long i, long j, long k, long v) {
    long s = size();
    n[static_cast<std::size_t>((i * s + j) * s + k)] = v;
  }

  // rows indexed by j, columns by k: (N_i)_{jk} = N_{ij}^k, so the
  // FP eigenvector with entries FPdim(X_k) is a right eigenvector
  std::vector<std::vector<long>> fusion_matrix(long i) const {
    long s = size();
    std::vector<std::vector<long>> m(static_cast<std::size_t>(s),
                                     std::vector<long>(static_cast<std::size_t>(s)));
    for (long j = 0; j < s; ++j)
      for (long k = 0; k < s; ++k) m[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = coeff(i, j, k);
    return m;
  }

  Report verify() const {
    Report rep;
    long s = size();

    bool sized = static_cast<long>(dual.size()) == s &&
                 static_cast<long>(n.size()) == s * s * s && unit >= 0 && unit < s;
    rep.add("table_shape", sized ? Verdict::Pass : Verdict::Fail,
            sized ? "" : "label/dual/table sizes disagree");
    if (!sized) return rep;

    bool nonneg = true;
    for (long v : n)
      if (v < 0) { nonneg = false; break; }
    rep.add("coefficients_nonnegative", nonneg ? Verdict::Pass : Verdict::Fail);

    std::string w;
    bool unit_ok = true;
    for (long i = 0; i < s && unit_ok; ++i)
      for (long j = 0; j < s && unit_ok; ++j) {
        if (coeff(i, unit, j) != (i == j ? 1 : 0) ||
            coeff(unit, i, j) != (i == j ? 1 : 0)) {
          unit_ok = false;
          w = "at " + labels[static_cast<std::size_t>(i)];
        }
      }
    rep.add("unit_axiom", unit_ok ? Verdict::Pass : Verdict::Fail, unit_ok ? "" : w);

    bool inv_ok = true;
    for (long i = 0; i < s && inv_ok; ++i)
      inv_ok = dual[static_cast<std::size_t>(i)] >= 0 && dual[static_cast<std::size_t>(i)] < s &&
               dual[static_cast<std::size_t>(dual[static_cast<std::size_t>(i)])] == i;
    rep.add("duality_involution", inv_ok ? Verdict::Pass : Verdict::Fail);

    w.clear();
    bool dual_unit = inv_ok;
    for (long i = 0; i < s && dual_unit; ++i)
      for (long j = 0; j < s && dual_unit; ++j)
        if (coeff(i, j, unit) != (dual[static_cast<std::size_t>(i)] == j ? 1 : 0)) {
          dual_unit = false;
          w = "at (" + labels[static_cast<std::size_t>(i)] + "," + labels[static_cast<std::size_t>(j)] + ")";
        }
    rep.add("duality_unit_coefficient", dual_unit ? Verdict::Pass : Verdict::Fail,
            dual_unit ? "" : w);

    // N_{ij}^k = N_{i* k}^j = N_{k j*}^i
    w.clear();
    bool frob = inv_ok;
    for (long i = 0; i < s && frob; ++i)
      for (long j = 0; j < s && frob; ++j)
        for (long k = 0; k < s; ++k) {
          long c = coeff(i, j, k);
          if (coeff(dual[static_cast<std::size_t>(i)], k, j) != c ||
              coeff(k, dual[static_cast<std::size_t>(j)], i) != c) {
            frob = false;
            w = "at (" + labels[static_cast<std::size_t>(i)] + "," + labels[static_cast<std::size_t>(j)] +
                ";" + labels[static_cast<std::size_t>(k)] + ")";
            break;
          }
        }
    rep.add("frobenius_reciprocity", frob ? Verdict::Pass : Verdict::Fail, frob ? "" : w);

    // sum_m N_{ij}^m N_{mk}^l = sum_m N_{jk}^m N_{im}^l, phrased as the
    // matrix identity M_j M_i = sum_m N_{ij}^m M_m with (M_i)_{jk} = N_{ij}^k
    w.clear();
    bool assoc = true;
    std::vector<std::vector<std::vector<long>>> mats;
    for (long i = 0; i < s; ++i) mats.push_back(fusion_matrix(i));
    for (long i = 0; i < s && assoc; ++i)
      for (long j = 0; j < s && assoc; ++j) {
        std::vector<std::vector<long>> lhs(static_cast<std::size_t>(s),
                                           std::vector<long>(static_cast<std::size_t>(s), 0));
        for (long a = 0; a < s; ++a)
          for (long m = 0; m < s; ++m) {
            long f = mats[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)][static_cast<std::size_t>(m)];
            if (f == 0) continue;
            const auto& row = mats[static_cast<std::size_t>(i)][static_cast<std::size_t>(m)];
            for (long b = 0; b < s; ++b) lhs[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += f * row[static_cast<std::size_t>(b)];
          }
        std::vector<std::vector<long>> rhs(static_cast<std::size_t>(s),
                                           std::vector<long>(static_cast<std::size_t>(s), 0));
        for (long m = 0; m < s; ++m) {
          long f = coeff(i, j, m);
          if (f == 0) continue;
          for (long a = 0; a < s; ++a)
            for (long b = 0; b < s; ++b)
              rhs[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] +=
                  f * mats[static_cast<std::size_t>(m)][static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        }
        if (lhs != rhs) {
          assoc = false;
          w = "at (" + labels[static_cast<std::size_t>(i)] + "," + labels[static_cast<std::size_t>(j)] + ")";
        }
      }
    rep.add("associativity", assoc ? Verdict::Pass : Verdict::Fail, assoc ? "" : w);
    return rep;
  }
};

// X_i X_j = sum_{r = max(i+j-k, 0)}^{min(i, j)} X_{i+j-2r} on X_0 .. X_k
inline BasedRing sl2_verlinde(long k) {
  if (k < 1) throw std::invalid_argument("sl2_verlinde: level must be >= 1");
  BasedRing r;
  long s = k + 1;
  for (long i = 0; i <= k; ++i) {
    r.labels.push_back("X" + std::to_string(i));
    r.dual.push_back(i);
  }
  r.unit = 0;
  r.n.assign(static_cast<std::size_t>(s * s * s), 0);
  for (long i = 0; i <= k; ++i)
    for (long j = 0; j <= k; ++j)
      for (long t = std::max(i + j - k, 0L); t <= std::min(i, j); ++t)
        r.set_coeff(i, j, i + j - 2 * t, 1);
  Report rep = r.verify();
  if (!rep.all_passed()) throw std::logic_error("sl2_verlinde: ring verification failed");
  return r;
}

// ---------------------------------------------------------------------------
// type-A weight combinatorics
//
// Weights live in the epsilon coordinates of sl_N: a weight with Dynkin
// labels (a_1 .. a_{N-1}) is the vector p with p_s = a_s + ... + a_{N-1},
// p_N = 0, taken modulo adding a constant to every coordinate. The invariant
// form is <p, r> = p.r - |p||r|/N, which is shift-invariant and gives
// <Lambda_i, Lambda_j> = min(i,j) - ij/N.

namespace typea {

inline std::vector<long> to_coords(long n, const std::vector<long>& dynkin) {
  std::vector<long> p(static_cast<std::size_t>(n), 0);
  long acc = 0;
  for (long s = n - 1; s >= 1; --s) {
    acc += dynkin[static_cast<std::size_t>(s - 1)];
    p[static_cast<std::size_t>(s - 1)] = acc;
  }
  return p;
}

inline Rat form(long n, const std::vector<long>& p, const std::vector<long>& r) {
  long dot = 0, sp = 0, sr = 0;
  for (long a = 0; a < n; ++a) {
    dot += p[static_cast<std::size_t>(a)] * r[static_cast<std::size_t>(a)];
    sp += p[static_cast<std::size_t>(a)];
    sr += r[static_cast<std::size_t>(a)];
  }
  return Rat(dot) - rat_frac(sp * sr, n);
}

inline std::vector<long> rho_coords(long n) {
  std::vector<long> p(static_cast<std::size_t>(n));
  for (long a = 0; a < n; ++a) p[static_cast<std::size_t>(a)] = n - 1 - a;
  return p;
}

// Folds p into the interior of the (shifted, level-ell) dominant alcove by
// the signed affine Weyl action. Returns sign 0 when p lies on a wall.
// ell = 0 folds by the finite Weyl group only (classical Racah-Speiser).
struct Folded {
  int sign = 0;
  std::vector<long> p;  // normalized: last coordinate 0
};

inline Folded fold(long n, std::vector<long> p, long ell) {
  int sign = 1;
  for (;;) {
    // insertion sort, descending; count transpositions
    for (std::size_t i = 1; i < p.size(); ++i) {
      long v = p[i];
      std::size_t j = i;
      while (j > 0 && p[j - 1] < v) {
        p[j] = p[j - 1];
        --j;
        sign = -sign;
      }
      p[j] = v;
    }
    for (std::size_t i = 1; i < p.size(); ++i)
      if (p[i - 1] == p[i]) return {0, {}};
    if (ell == 0) break;
    long spread = p.front() - p.back();
    if (spread == ell) return {0, {}};
    if (spread < ell) break;
    // reflect in the affine wall x_1 - x_N = ell
    long hi = p.front(), lo = p.back();
    p.front() = lo + ell;
    p.back() = hi - ell;
    sign = -sign;
  }
  long base = p.back();
  for (long& v : p) v -= base;
  return {sign, std::move(p)};
}

// Weight system of the irreducible with highest weight mu (Dynkin labels):
// multiplicities by the Freudenthal recursion, explored downward along the
// simple roots. Keys are coordinate vectors normalized to last entry 0.
inline std::map<std::vector<long>, long> weight_system(long n,
                                                       const std::vector<long>& mu) {
  std::vector<long> rho = rho_coords(n);
  std::vector<long> top = to_coords(n, mu);

  auto normalized = [&](std::vector<long> p) {
    long base = p.back();
    for (long& v : p) v -= base;
    return p;
  };
  auto plus_rho = [&](const std::vector<long>& p) {
    std::vector<long> q = p;
    for (long a = 0; a < n; ++a) q[static_cast<std::size_t>(a)] += rho[static_cast<std::size_t>(a)];
    return q;
  };

  Rat top_norm = form(n, plus_rho(top), plus_rho(top));
  std::map<std::vector<long>, long> mult;
  mult[normalized(top)] = 1;

  std::vector<std::vector<long>> frontier = {normalized(top)};
  while (!frontier.empty()) {
    std::vector<std::vector<long>> next;
    for (const auto& p : frontier) {
      for (long s = 0; s + 1 < n; ++s) {
        std::vector<long> q = p;
        q[static_cast<std::size_t>(s)] -= 1;
        q[static_cast<std::size_t>(s + 1)] += 1;
        q = normalized(q);
        if (mult.count(q)) continue;
        // Freudenthal: (|mu+rho|^2 - |q+rho|^2) m(q)
        //   = 2 sum_{a<b} sum_{t>=1} m(q + t(e_a - e_b)) <q + t(e_a-e_b), e_a-e_b>
        Rat denom = top_norm - form(n, plus_rho(q), plus_rho(q));
        if (denom <= 0) continue;  // not below the highest weight
        long acc2 = 0;
        for (long a = 0; a < n; ++a)
          for (long b = a + 1; b < n; ++b) {
            for (long t = 1;; ++t) {
              std::vector<long> up = q;
              up[static_cast<std::size_t>(a)] += t;
              up[static_cast<std::size_t>(b)] -= t;
              auto it = mult.find(normalized(up));
              if (it == mult.end()) break;  // weight strings are unbroken
              acc2 += it->second * (q[static_cast<std::size_t>(a)] - q[static_cast<std::size_t>(b)] + 2 * t);
            }
          }
        Rat m = rat_frac(2 * acc2, 1) / denom;
        if (m.get_den() != 1) throw std::logic_error("weight multiplicity not integral");
        long mv = static_cast<long>(m.get_num().get_si());
        if (mv < 0) throw std::logic_error("negative weight multiplicity");
        if (mv == 0) continue;
        mult[q] = mv;
        next.push_back(q);
      }
    }
    frontier = std::move(next);
  }
  return mult;
}

}  // namespace typea

// ---------------------------------------------------------------------------
// alcove weight data for sl_N at a root of unity

struct WeightData {
  long n = 0;      // sl_n
  long ell = 0;    // order parameter; q is a primitive 2*ell-th root of unity
  long level = 0;  // ell - n
  std::vector<std::vector<long>> alcove;  // Dynkin labels, graded lex order

  Rat form(const std::vector<long>& la, const std::vector<long>& mu) const {
    return typea::form(n, typea::to_coords(n, la), typea::to_coords(n, mu));
  }
  // <la, la + 2 rho>; rho has every Dynkin label equal to 1
  Rat casimir(const std::vector<long>& la) const {
    std::vector<long> shifted(static_cast<std::size_t>(n - 1));
    for (long s = 0; s + 1 < n; ++s)
      shifted[static_cast<std::size_t>(s)] = la[static_cast<std::size_t>(s)] + 2;
    return form(la, shifted);
  }
};

inline WeightData weight_data(long n, long ell) {
  if (n < 2) throw std::invalid_argument("weight_data: need sl_N with N >= 2");
  if (ell < n + 1) throw std::invalid_argument("weight_data: need ell >= N + 1");
  WeightData wd;
  wd.n = n;
  wd.ell = ell;
  wd.level = ell - n;
  // all dominant labels with total <= level, graded lexicographic
  long rank = n - 1;
  std::vector<long> c(static_cast<std::size_t>(rank), 0);
  auto emit = [&](auto&& self, long pos, long remaining) -> void {
    if (pos == rank - 1) {
      c[static_cast<std::size_t>(pos)] = remaining;
      wd.alcove.push_back(c);
      return;
    }
    for (long v = remaining; v >= 0; --v) {
      c[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  for (long total = 0; total <= wd.level; ++total) emit(emit, 0, total);
  return wd;
}

namespace typea {

inline std::string weight_label(const std::vector<long>& dynkin) {
  std::string s = "X(";
  for (std::size_t i = 0; i < dynkin.size(); ++i)
    s += (i ? "," : "") + std::to_string(dynkin[i]);
  return s + ")";
}

}  // namespace typea

// Verlinde ring of sl_N at q = exp(i pi / ell): classical tensor
// multiplicities by Racah-Speiser over the Freudenthal weight system, folded
// into the level-(ell-N) alcove by the signed affine Weyl action.
inline BasedRing slN_verlinde(long n, long ell) {
  WeightData wd = weight_data(n, ell);
  BasedRing r;
  long s = static_cast<long>(wd.alcove.size());
  std::map<std::vector<long>, long> index;
  for (long i = 0; i < s; ++i) {
    r.labels.push_back(typea::weight_label(wd.alcove[static_cast<std::size_t>(i)]));
    index[wd.alcove[static_cast<std::size_t>(i)]] = i;
  }
  r.unit = index.at(std::vector<long>(static_cast<std::size_t>(n - 1), 0));
  for (long i = 0; i < s; ++i) {
    std::vector<long> d = wd.alcove[static_cast<std::size_t>(i)];
    std::reverse(d.begin(), d.end());  // -w0 reverses the Dynkin diagram
    r.dual.push_back(index.at(d));
  }
  r.n.assign(static_cast<std::size_t>(s * s * s), 0);

  std::map<std::vector<long>, std::map<std::vector<long>, long>> systems;
  std::vector<long> rho = typea::rho_coords(n);
  for (long j = 0; j < s; ++j) {
    const std::vector<long>& mu = wd.alcove[static_cast<std::size_t>(j)];
    if (!systems.count(mu)) systems[mu] = typea::weight_system(n, mu);
  }

  for (long i = 0; i < s; ++i) {
    std::vector<long> lp = typea::to_coords(n, wd.alcove[static_cast<std::size_t>(i)]);
    for (long j = 0; j < s; ++j) {
      for (const auto& [beta, m] : systems.at(wd.alcove[static_cast<std::size_t>(j)])) {
        std::vector<long> y(static_cast<std::size_t>(n));
        for (long a = 0; a < n; ++a)
          y[static_cast<std::size_t>(a)] = lp[static_cast<std::size_t>(a)] +
                                           beta[static_cast<std::size_t>(a)] +
                                           rho[static_cast<std::size_t>(a)];
        typea::Folded f = typea::fold(n, std::move(y), ell);
        if (f.sign == 0) continue;
        // strip rho, read off alcove labels
        std::vector<long> nu(static_cast<std::size_t>(n - 1));
        for (long a = 0; a + 1 < n; ++a)
          nu[static_cast<std::size_t>(a)] =
              f.p[static_cast<std::size_t>(a)] - f.p[static_cast<std::size_t>(a + 1)] - 1;
        auto it = index.find(nu);
        if (it == index.end()) throw std::logic_error("folded weight escaped the alcove");
        long k = it->second;
        r.n[static_cast<std::size_t>((i * s + j) * s + k)] += f.sign * m;
      }
    }
  }

  for (long v : r.n)
    if (v < 0) throw std::logic_error("negative fused multiplicity after folding");
  Report rep = r.verify();
  if (!rep.all_passed()) throw std::logic_error("slN_verlinde: ring verification failed");
  return r;
}

// ---------------------------------------------------------------------------
// Frobenius-Perron dimension with a certified interval

struct FpBound {
  double value = 0.0;
  Rat lo, hi;  // certified enclosure of the Perron-Frobenius eigenvalue
};

// Power iteration on N_i + I (the shift keeps the iterate strictly positive),
// then an exact Collatz-Wielandt sandwich at a rational snapshot of the
// iterate: min_j (Bx)_j/x_j <= rho(B) <= max_j (Bx)_j/x_j for x > 0.
inline FpBound fp_dimension(const BasedRing& r, long i) {
  auto m = r.fusion_matrix(i);
  long s = r.size();
  std::vector<double> x(static_cast<std::size_t>(s), 1.0);
  for (int iter = 0; iter < 400; ++iter) {
    std::vector<double> y(static_cast<std::size_t>(s), 0.0);
    for (long a = 0; a < s; ++a) {
      double acc = x[static_cast<std::size_t>(a)];  // the +I shift
      const auto& row = m[static_cast<std::size_t>(a)];
      for (long b = 0; b < s; ++b) acc += row[static_cast<std::size_t>(b)] * x[static_cast<std::size_t>(b)];
      y[static_cast<std::size_t>(a)] = acc;
    }
    double norm = 0.0;
    for (double v : y) norm = std::max(norm, v);
    for (double& v : y) v /= norm;
    x = std::move(y);
  }
  // rational snapshot, strictly positive
  const long denom = 1L << 40;
  std::vector<Rat> xr(static_cast<std::size_t>(s));
  for (long a = 0; a < s; ++a) {
    long num = static_cast<long>(std::llround(x[static_cast<std::size_t>(a)] * static_cast<double>(denom)));
    if (num < 1) num = 1;
    xr[static_cast<std::size_t>(a)] = rat_frac(num, denom);
  }
  std::optional<Rat> lo, hi;
  for (long a = 0; a < s; ++a) {
    Rat acc = xr[static_cast<std::size_t>(a)];
    for (long b = 0; b < s; ++b)
      acc += Rat(m[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) * xr[static_cast<std::size_t>(b)];
    Rat ratio = acc / xr[static_cast<std::size_t>(a)];
    if (!lo || ratio < *lo) lo = ratio;
    if (!hi || ratio > *hi) hi = ratio;
  }
  FpBound out;
  out.lo = *lo - 1;
  out.hi = *hi - 1;
  out.value = (rat_double(out.lo) + rat_double(out.hi)) / 2.0;
  return out;
}

// ---------------------------------------------------------------------------
// weak dimension functions:  D(unit) = 1, D > 0, and for every pair
//   sum_tau N_{rho sigma}^tau D(tau) <= D(rho) D(sigma)

struct WdfCheck {
  bool ok = true;
  std::string witness;
};

inline WdfCheck is_weak_dimension_function(const BasedRing& r, const std::vector<Rat>& d,
                                           bool require_dual_symmetry = false) {
  WdfCheck res;
  long s = r.size();
  if (static_cast<long>(d.size()) != s) {
    res.ok = false;
    res.witness = "value count does not match the label count";
    return res;
  }
  if (d[static_cast<std::size_t>(r.unit)] != 1) {
    res.ok = false;
    res.witness = "D(unit) = " + rat_str(d[static_cast<std::size_t>(r.unit)]) + ", expected 1";
    return res;
  }
  for (long i = 0; i < s; ++i)
    if (d[static_cast<std::size_t>(i)] <= 0) {
      res.ok = false;
      res.witness = "D(" + r.labels[static_cast<std::size_t>(i)] + ") is not positive";
      return res;
    }
  if (require_dual_symmetry)
    for (long i = 0; i < s; ++i)
      if (d[static_cast<std::size_t>(i)] != d[static_cast<std::size_t>(r.dual[static_cast<std::size_t>(i)])]) {
        res.ok = false;
        res.witness = "D(" + r.labels[static_cast<std::size_t>(i)] + ") != D(dual)";
        return res;
      }
  for (long i = 0; i < s; ++i)
    for (long j = 0; j < s; ++j) {
      Rat lhs(0);
      for (long k = 0; k < s; ++k)
        if (long c = r.coeff(i, j, k); c != 0) lhs += Rat(c) * d[static_cast<std::size_t>(k)];
      Rat rhs = d[static_cast<std::size_t>(i)] * d[static_cast<std::size_t>(j)];
      if (lhs > rhs) {
        res.ok = false;
        res.witness = "at (" + r.labels[static_cast<std::size_t>(i)] + "," +
                      r.labels[static_cast<std::size_t>(j)] + "): " + rat_str(lhs) + " > " + rat_str(rhs);
        return res;
      }
    }
  return res;
}

// D(unit) = 1, D(i) = M * floor(d(i)) otherwise; valid for any M >= 4 when d
// is a weak dimension function with d >= 1 away from the unit. The result is
// verified and must dominate the Frobenius-Perron dimension labelwise.
inline std::vector<Rat> integral_wdf(const BasedRing& r, const std::vector<double>& d, long m) {
  if (m < 4) throw std::invalid_argument("integral_wdf: need M >= 4");
  long s = r.size();
  if (static_cast<long>(d.size()) != s)
    throw std::invalid_argument("integral_wdf: value count mismatch");
  std::vector<Rat> out(static_cast<std::size_t>(s));
  for (long i = 0; i < s; ++i) {
    if (i == r.unit) {
      out[static_cast<std::size_t>(i)] = 1;
      continue;
    }
    if (d[static_cast<std::size_t>(i)] < 1.0)
      throw std::invalid_argument("integral_wdf: d < 1 at " + r.labels[static_cast<std::size_t>(i)]);
    out[static_cast<std::size_t>(i)] = Rat(m * static_cast<long>(std::floor(d[static_cast<std::size_t>(i)])));
  }
  WdfCheck chk = is_weak_dimension_function(r, out);
  if (!chk.ok) throw std::logic_error("integral_wdf: result fails the inequality: " + chk.witness);
  for (long i = 0; i < s; ++i) {
    FpBound fp = fp_dimension(r, i);
    if (out[static_cast<std::size_t>(i)] < fp.hi)
      throw std::logic_error("integral_wdf: value below the Frobenius-Perron bound at " +
                             r.labels[static_cast<std::size_t>(i)]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// quantum dimensions and ribbon values at q = exp(i pi / ell)

// [m]_q = q^{m-1} + q^{m-3} + ... + q^{1-m}
inline Cyc q_integer(long m, long two_ell) {
  Cyc acc;
  for (long j = 0; j < m; ++j) acc += Cyc::root(two_ell, m - 1 - 2 * j);
  return acc;
}

// q-Weyl dimension: prod_{a<b} [<la+rho, e_a - e_b>]_q / [<rho, e_a - e_b>]_q
inline Cyc qdim(const WeightData& wd, const std::vector<long>& la) {
  long n = wd.n;
  std::vector<long> p = typea::to_coords(n, la);
  std::vector<long> rho = typea::rho_coords(n);
  Cyc num = Cyc::one(), den = Cyc::one();
  for (long a = 0; a < n; ++a)
    for (long b = a + 1; b < n; ++b) {
      long top = p[static_cast<std::size_t>(a)] + rho[static_cast<std::size_t>(a)] -
                 p[static_cast<std::size_t>(b)] - rho[static_cast<std::size_t>(b)];
      long bot = rho[static_cast<std::size_t>(a)] - rho[static_cast<std::size_t>(b)];
      num *= q_integer(top, 2 * wd.ell);
      Cyc d = q_integer(bot, 2 * wd.ell);
      if (d.is_zero()) throw std::domain_error("qdim: vanishing Weyl denominator");
      den *= d;
    }
  return num * den.inverse();
}

// theta_la = q^{<la, la + 2 rho>}; fractional exponents land in the
// cyclotomic order 2*ell*denominator
inline Cyc ribbon_theta(const WeightData& wd, const std::vector<long>& la) {
  Rat x = wd.casimir(la);
  long den = static_cast<long>(x.get_den().get_si());
  long num = static_cast<long>(x.get_num().get_si());
  return Cyc::root(2 * wd.ell * den, num);
}

// ---------------------------------------------------------------------------
// modular data

struct ModularData {
  std::vector<Cyc> theta, dim;
  Mat s, t;
  bool modular = false;
  Report report;
};

// S_{ij} = theta_i^{-1} theta_j^{-1} sum_k N_{ij}^k theta_k d_k: the trace of
// the double braiding on X_i (x) X_j, evaluated through the balancing on each
// fusion channel. T = diag(theta_i^{-1}); with that pairing the projective
// relations are S^2 = p+ p- C and (ST)^3 = p- S^2. The global
// 1/sqrt(sum d_k^2) normalization is cosmetic and never applied in the exact
// checks.
inline ModularData modular_data(const BasedRing& r, const std::vector<Cyc>& theta,
                                const std::vector<Cyc>& dim) {
  long s = r.size();
  if (static_cast<long>(theta.size()) != s || static_cast<long>(dim.size()) != s)
    throw std::invalid_argument("modular_data: theta/dim size mismatch");
  ModularData md;
  md.theta = theta;
  md.dim = dim;
  md.s = Mat(s, s);
  md.t = Mat(s, s);
  for (long i = 0; i < s; ++i) md.t.set(i, i, theta[static_cast<std::size_t>(i)].inverse());
  for (long i = 0; i < s; ++i)
    for (long j = 0; j < s; ++j) {
      Cyc acc;
      for (long k = 0; k < s; ++k) {
        long c = r.coeff(i, j, k);
        if (c != 0)
          acc += Cyc(c) * theta[static_cast<std::size_t>(k)] * dim[static_cast<std::size_t>(k)];
      }
      md.s.set(i, j, acc * theta[static_cast<std::size_t>(i)].inverse() *
                         theta[static_cast<std::size_t>(j)].inverse());
    }

  auto check_mat = [&](const std::string& name, const Mat& lhs, const Mat& rhs,
                       const std::string& w) {
    md.report.add(name, lhs == rhs ? Verdict::Pass : Verdict::Fail, lhs == rhs ? "" : w);
  };

  check_mat("s_symmetric", md.s, md.s.transpose(), "S is not symmetric");

  bool invertible = lin::rank(md.s) == s;
  md.report.add("s_invertible", invertible ? Verdict::Pass : Verdict::Fail,
                invertible ? "" : "S is singular: not modular");

  // S^2 proportional to the charge conjugation permutation
  Mat s2 = md.s * md.s;
  Mat conj(s, s);
  {
    Cyc lam = s2.get(r.unit, r.dual[static_cast<std::size_t>(r.unit)]);
    for (long i = 0; i < s; ++i) conj.set(i, r.dual[static_cast<std::size_t>(i)], lam);
  }
  check_mat("s_squared_charge_conjugation", s2, conj,
            "S^2 is not proportional to the duality permutation");

  // (ST)^3 proportional to S^2
  Mat st = md.s * md.t;
  Mat st3 = st * st * st;
  {
    Cyc lam;
    bool found = false;
    for (long i = 0; i < s && !found; ++i)
      for (long j = 0; j < s && !found; ++j)
        if (!s2.get(i, j).is_zero()) {
          lam = st3.get(i, j) * s2.get(i, j).inverse();
          found = true;
        }
    check_mat("st_cubed_proportional_s_squared", st3, s2.scaled(found ? lam : Cyc::one()),
              "(ST)^3 is not proportional to S^2");
  }

  md.modular = md.report.all_passed();
  return md;
}

// ---------------------------------------------------------------------------
// ring serialization: label list plus nonzero triple table

inline void save_ring(std::ostream& os, const BasedRing& r) {
  os << "basedring 1\n";
  os << "labels";
  for (const auto& l : r.labels) os << ' ' << l;
  os << "\nunit " << r.labels[static_cast<std::size_t>(r.unit)] << "\nduals";
  for (long i = 0; i < r.size(); ++i)
    os << ' ' << r.labels[static_cast<std::size_t>(r.dual[static_cast<std::size_t>(i)])];
  os << '\n';
  for (long i = 0; i < r.size(); ++i)
    for (long j = 0; j < r.size(); ++j)
      for (long k = 0; k < r.size(); ++k)
        if (long c = r.coeff(i, j, k); c != 0)
          os << "triple " << r.labels[static_cast<std::size_t>(i)] << ' '
             << r.labels[static_cast<std::size_t>(j)] << ' ' << r.labels[static_cast<std::size_t>(k)]
             << ' ' << c << '\n';
}

inline BasedRing load_ring(std::istream& is) {
  BasedRing r;
  std::string line;
  if (!std::getline(is, line) || line != "basedring 1")
    throw std::runtime_error("ring file: missing 'basedring 1' header");
  std::map<std::string, long> index;
  bool have_labels = false, have_unit = false, have_duals = false;
  auto need = [&](const std::string& name) -> long {
    auto it = index.find(name);
    if (it == index.end()) throw std::runtime_error("ring file: unknown label " + name);
    return it->second;
  };
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "labels") {
      std::string l;
      while (ls >> l) {
        index[l] = r.size();
        r.labels.push_back(l);
      }
      have_labels = !r.labels.empty();
      r.n.assign(static_cast<std::size_t>(r.size() * r.size() * r.size()), 0);
    } else if (tag == "unit") {
      std::string l;
      ls >> l;
      r.unit = need(l);
      have_unit = true;
    } else if (tag == "duals") {
      std::string l;
      while (ls >> l) r.dual.push_back(need(l));
      have_duals = static_cast<long>(r.dual.size()) == r.size();
      if (!have_duals) throw std::runtime_error("ring file: dual count mismatch");
    } else if (tag == "triple") {
      std::string a, b, c;
      long v = 0;
      if (!(ls >> a >> b >> c >> v)) throw std::runtime_error("ring file: bad triple line");
      r.set_coeff(need(a), need(b), need(c), v);
    } else {
      throw std::runtime_error("ring file: unknown directive " + tag);
    }
  }
  if (!have_labels || !have_unit || !have_duals)
    throw std::runtime_error("ring file: labels, unit, and duals are required");
  return r;
}

}  // namespace wqh
