#pragma once
// 3-cocycles on finite cyclic groups and the commutative quasi-Hopf algebras
// of functions they define. Group elements are residues 0..N-1.

#include <wqh/verify.hpp>

#include <optional>
#include <variant>

namespace wqh {

struct ThreeCocycle {
  long n = 1;
  std::vector<Cyc> vals;  // vals[(a*n + b)*n + c]

  static ThreeCocycle trivial(long n) {
    ThreeCocycle om;
    om.n = n;
    om.vals.assign(static_cast<size_t>(n * n * n), Cyc::one());
    return om;
  }

  const Cyc& at(long a, long b, long c) const {
    return vals[static_cast<size_t>((a * n + b) * n + c)];
  }
  Cyc& at(long a, long b, long c) {
    return vals[static_cast<size_t>((a * n + b) * n + c)];
  }

  bool is_normalized() const {
    for (long a = 0; a < n; ++a)
      for (long b = 0; b < n; ++b)
        if (!at(0, a, b).is_one() || !at(a, 0, b).is_one() || !at(a, b, 0).is_one())
          return false;
    return true;
  }

  // ω(b,c,d)ω(a,b+c,d)ω(a,b,c) = ω(a+b,c,d)ω(a,b,c+d) on all quadruples
  bool is_cocycle() const {
    for (long a = 0; a < n; ++a)
      for (long b = 0; b < n; ++b)
        for (long c = 0; c < n; ++c)
          for (long d = 0; d < n; ++d) {
            Cyc lhs = at(b, c, d) * at(a, (b + c) % n, d) * at(a, b, c);
            Cyc rhs = at((a + b) % n, c, d) * at(a, b, (c + d) % n);
            if (!(lhs == rhs)) return false;
          }
    return true;
  }
};

struct TwoCochain {
  long n = 1;
  std::vector<Cyc> vals;  // vals[a*n + b]

  static TwoCochain trivial(long n) {
    TwoCochain f;
    f.n = n;
    f.vals.assign(static_cast<size_t>(n * n), Cyc::one());
    return f;
  }

  const Cyc& at(long a, long b) const { return vals[static_cast<size_t>(a * n + b)]; }
  Cyc& at(long a, long b) { return vals[static_cast<size_t>(a * n + b)]; }

  bool is_normalized() const {
    for (long a = 0; a < n; ++a)
      if (!at(0, a).is_one() || !at(a, 0).is_one()) return false;
    return true;
  }
};

// carry of addition mod n: ⌊(a+b)/n⌋ − ⌊a/n⌋ − ⌊b/n⌋ for residues a, b
inline long carry_gamma(long a, long b, long n) {
  if (a < 0 || a >= n || b < 0 || b >= n)
    throw std::invalid_argument("carry_gamma: arguments must be residues");
  return (a + b) / n;
}

// ω_w(a,b,c) = w^{γ(a,b)·c} for an n-th root of unity w
inline ThreeCocycle omega_w(long n, const Cyc& w) {
  if (!(w.pow(n) == Cyc::one()))
    throw std::invalid_argument("omega_w: w is not an n-th root of unity");
  ThreeCocycle om = ThreeCocycle::trivial(n);
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) {
      long g = carry_gamma(a, b, n);
      if (!g) continue;
      for (long c = 1; c < n; ++c) om.at(a, b, c) = w.pow(g * c);
    }
  return om;
}

// Fun_ω(Z_n): n one-dimensional blocks g0..g{n-1}, coproduct dual to group
// addition, associator the diagonal tensor ω, antipode S(δ_g) = δ_{-g} with
// α(g) = ω(g,-g,g)^{-1}, β = 1.
inline WqhPresentation fun_omega(long n, const ThreeCocycle& om) {
  if (om.n != n) throw std::invalid_argument("fun_omega: cocycle order mismatch");
  if (!om.is_normalized() || !om.is_cocycle())
    throw std::invalid_argument("fun_omega: not a normalized 3-cocycle");
  auto shape = std::make_shared<BlockShape>();
  for (long g = 0; g < n; ++g) {
    shape->labels.push_back("g" + std::to_string(g));
    shape->dims.push_back(1);
  }
  WqhPresentation w;
  w.shape = shape;
  w.counit_block = 0;
  w.star = true;
  w.delta.init(shape);
  for (long g = 0; g < n; ++g)
    for (long h = 0; h < n; ++h)
      w.delta.add_entry(static_cast<int>(g), 0, 0, static_cast<int>(h), 0, 0,
                        static_cast<int>(((g - h) % n + n) % n), 0, 0, Cyc::one());
  w.phi = AlgTensor(shape, 3);
  w.phi_inv = AlgTensor(shape, 3);
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b)
      for (long c = 0; c < n; ++c) {
        BlockTuple t{static_cast<int>(a), static_cast<int>(b), static_cast<int>(c)};
        w.phi.add_to(t, 0, 0, om.at(a, b, c));
        w.phi_inv.add_to(t, 0, 0, om.at(a, b, c).inverse());
      }
  Antipode ap;
  ap.s.init(shape);
  ap.alpha = AlgTensor(shape, 1);
  ap.beta = AlgTensor::unit(shape, 1);
  for (long g = 0; g < n; ++g) {
    long ginv = (n - g) % n;
    ap.s.add_entry(static_cast<int>(g), 0, 0, static_cast<int>(ginv), 0, 0, Cyc::one());
    ap.alpha.add_to({static_cast<int>(g)}, 0, 0, om.at(g, ginv, g).inverse());
  }
  w.antipode = std::move(ap);
  return w;
}

// Searches a normalized F with F(g^{-1},g)·ω(g,g^{-1},g) = F(g,g^{-1}) for all
// g. Solvable unless some involutive g has ω(g,g,g) = -1; that g is returned.
inline std::variant<TwoCochain, long> antipode_obstruction(long n, const ThreeCocycle& om) {
  for (long g = 1; g < n; ++g) {
    long ginv = (n - g) % n;
    if (g == ginv && !om.at(g, g, g).is_one()) return g;
  }
  TwoCochain f = TwoCochain::trivial(n);
  for (long g = 1; g < n; ++g) {
    long ginv = (n - g) % n;
    if (g < ginv) f.at(g, ginv) = om.at(g, ginv, g);
    // the cocycle identity gives ω(g,g^{-1},g)ω(g^{-1},g,g^{-1}) = 1, so the
    // mirrored equation is consistent with F(g^{-1},g) = 1
  }
  return f;
}

// ω_F(g,h,k) = F(h,k) F(g,h+k) ω(g,h,k) F(g+h,k)^{-1} F(g,h)^{-1}
inline ThreeCocycle twist_cocycle(const ThreeCocycle& om, const TwoCochain& f) {
  if (om.n != f.n) throw std::invalid_argument("twist_cocycle: order mismatch");
  if (!f.is_normalized()) throw std::invalid_argument("twist_cocycle: F not normalized");
  long n = om.n;
  ThreeCocycle out = ThreeCocycle::trivial(n);
  for (long g = 0; g < n; ++g)
    for (long h = 0; h < n; ++h)
      for (long k = 0; k < n; ++k)
        out.at(g, h, k) = f.at(h, k) * f.at(g, (h + k) % n) * om.at(g, h, k) *
                          f.at((g + h) % n, k).inverse() * f.at(g, h).inverse();
  return out;
}

// A 2-cochain as a twist over a Fun_ω presentation.
inline Twist cochain_twist(const WqhPresentation& w, const TwoCochain& f) {
  long n = f.n;
  if (w.shape->nblocks() != n)
    throw std::invalid_argument("cochain_twist: size mismatch");
  Twist t;
  t.t = AlgTensor(w.shape, 2);
  t.tinv = AlgTensor(w.shape, 2);
  for (long a = 0; a < n; ++a)
    for (long b = 0; b < n; ++b) {
      BlockTuple key{static_cast<int>(a), static_cast<int>(b)};
      t.t.add_to(key, 0, 0, f.at(a, b));
      t.tinv.add_to(key, 0, 0, f.at(a, b).inverse());
    }
  return t;
}

// Complete cohomology-class invariant on Z_n: the product over k of
// ω(1, k, 1). It is w on ω_w and 1 on every coboundary (telescoping), and
// multiplicative, so it classifies H³(Z_n, T) ≅ Z_n.
inline Cyc cocycle_invariant(const ThreeCocycle& om) {
  Cyc inv = Cyc::one();
  for (long k = 0; k < om.n; ++k) inv *= om.at(1 % om.n, k, 1 % om.n);
  return inv;
}

// Exhaustive search for a normalized 2-cochain F with values among the
// value_order-th roots of unity such that ω_F ≡ 1, i.e. F trivializes ω.
// Desk-scale group orders only; enumeration starts at F ≡ 1.
inline std::optional<TwoCochain> exhaustive_trivializing_cochain(
    const ThreeCocycle& om, long value_order) {
  long n = om.n;
  long cells = (n - 1) * (n - 1);
  std::vector<long> expo(static_cast<size_t>(cells), 0);
  ThreeCocycle triv = ThreeCocycle::trivial(n);
  for (;;) {
    TwoCochain f = TwoCochain::trivial(n);
    for (long a = 1; a < n; ++a)
      for (long b = 1; b < n; ++b)
        f.vals[static_cast<size_t>(a * n + b)] =
            Cyc::root(value_order, expo[static_cast<size_t>((a - 1) * (n - 1) + b - 1)]);
    ThreeCocycle tw = twist_cocycle(om, f);
    if (tw.vals == triv.vals) return f;
    long k = cells - 1;
    while (k >= 0 && ++expo[static_cast<size_t>(k)] == value_order)
      expo[static_cast<size_t>(k--)] = 0;
    if (k < 0) break;
  }
  return std::nullopt;
}

}  // namespace wqh
