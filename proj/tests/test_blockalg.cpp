// Block algebra tensors: products against dense oracles, outer products,
// leg permutations, partial inverses, coproduct application.

#include <wqh/blockalg.hpp>

#include <catch2/catch_amalgamated.hpp>

#include "testutil.hpp"

using namespace wqh;
using namespace wqh::testutil;

namespace {

// independent dense product within one block tuple
Mat dense_mul(const Mat& a, const Mat& b) {
  Mat c(a.rows(), b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < b.cols(); ++j) {
      Cyc acc = Cyc::zero();
      for (long k = 0; k < a.cols(); ++k) acc += a.get(i, k) * b.get(k, j);
      if (!acc.is_zero()) c.set(i, j, acc);
    }
  return c;
}

Mat dense_kron(const Mat& a, const Mat& b) {
  Mat c(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j)
      for (long k = 0; k < b.rows(); ++k)
        for (long l = 0; l < b.cols(); ++l) {
          Cyc v = a.get(i, j) * b.get(k, l);
          if (!v.is_zero()) c.set(i * b.rows() + k, j * b.cols() + l, v);
        }
  return c;
}

}  // namespace

TEST_CASE("multiplication matches the dense oracle") {
  std::mt19937 rng(101);
  ShapePtr s = shape_abc();
  for (int trial = 0; trial < 6; ++trial) {
    AlgTensor a = random_tensor(s, 1, rng), b = random_tensor(s, 1, rng);
    AlgTensor c = a * b;
    for (int r = 0; r < s->nblocks(); ++r) {
      long d = s->dims[static_cast<size_t>(r)];
      Mat ma(d, d), mb(d, d);
      if (const Mat* p = a.find({r})) ma = *p;
      if (const Mat* p = b.find({r})) mb = *p;
      Mat want = dense_mul(ma, mb);
      Mat got(d, d);
      if (const Mat* p = c.find({r})) got = *p;
      REQUIRE(got == want);
    }
  }

  AlgTensor unit = AlgTensor::unit(s, 1);
  AlgTensor a = random_tensor(s, 1, rng);
  REQUIRE(unit * a == a);
  REQUIRE(a * unit == a);

  // two-leg: associativity and distributivity on random tensors
  AlgTensor x = random_tensor(s, 2, rng, 25), y = random_tensor(s, 2, rng, 25),
            z = random_tensor(s, 2, rng, 25);
  REQUIRE((x * y) * z == x * (y * z));
  REQUIRE(x * (y + z) == x * y + x * z);
}

TEST_CASE("outer products and the interchange law") {
  std::mt19937 rng(202);
  ShapePtr s = shape_abc();
  AlgTensor a = random_tensor(s, 1, rng), b = random_tensor(s, 1, rng),
            c = random_tensor(s, 1, rng), d = random_tensor(s, 1, rng);

  // (a⊗b)(c⊗d) = ac ⊗ bd
  REQUIRE(a.outer(b) * c.outer(d) == (a * c).outer(b * d));

  // blockwise Kronecker against the dense oracle
  AlgTensor ab = a.outer(b);
  for (const auto& [t, m] : ab.blocks()) {
    const Mat* ma = a.find({t[0]});
    const Mat* mb = b.find({t[1]});
    REQUIRE(ma != nullptr);
    REQUIRE(mb != nullptr);
    REQUIRE(m == dense_kron(*ma, *mb));
  }

  // I⊗I⊗I is the unit of the three-leg algebra
  AlgTensor unit3 = AlgTensor::unit(s, 3);
  AlgTensor triple = a.outer(b).outer(c);
  REQUIRE(unit3 * triple == triple);
  REQUIRE(triple * unit3 == triple);
  REQUIRE(AlgTensor::unit(s, 1).outer(AlgTensor::unit(s, 1)).outer(AlgTensor::unit(s, 1)) == unit3);
}

TEST_CASE("leg permutations") {
  std::mt19937 rng(303);
  ShapePtr s = shape_abc();
  AlgTensor a = random_tensor(s, 1, rng), b = random_tensor(s, 1, rng),
            c = random_tensor(s, 1, rng);

  // flip of a simple tensor
  REQUIRE(a.outer(b).permuted({1, 0}) == b.outer(a));
  // involution
  AlgTensor r = random_tensor(s, 2, rng, 30);
  REQUIRE(r.permuted({1, 0}).permuted({1, 0}) == r);
  // identity permutation
  REQUIRE(r.permuted({0, 1}) == r);
  // multiplicativity
  AlgTensor r2 = random_tensor(s, 2, rng, 30);
  REQUIRE((r * r2).permuted({1, 0}) == r.permuted({1, 0}) * r2.permuted({1, 0}));
  // three legs: dest semantics, factor k lands in slot dest[k]
  REQUIRE(a.outer(b).outer(c).permuted({2, 0, 1}) == b.outer(c).outer(a));
  AlgTensor t3 = random_tensor(s, 3, rng, 15);
  AlgTensor u3 = random_tensor(s, 3, rng, 15);
  REQUIRE((t3 * u3).permuted({2, 0, 1}) == t3.permuted({2, 0, 1}) * u3.permuted({2, 0, 1}));
  // composing {2,0,1} twice sends factor k to slot k+2 mod 3
  REQUIRE(t3.permuted({2, 0, 1}).permuted({2, 0, 1}) == t3.permuted({1, 2, 0}));
}

TEST_CASE("adjoints are anti-automorphisms, with and without a form") {
  std::mt19937 rng(404);
  ShapePtr s = shape_abc();
  AlgTensor a = random_tensor(s, 2, rng, 30), b = random_tensor(s, 2, rng, 30);

  REQUIRE((a * b).adjoint() == b.adjoint() * a.adjoint());
  REQUIRE(a.adjoint().adjoint() == a);

  // positive diagonal form; the twisted adjoint stays an anti-automorphism
  BlockForms forms = {{Cyc(1), Cyc(2)}, {Cyc(3)}, {Cyc(1), Cyc(2), Cyc(4)}};
  REQUIRE((a * b).adjoint(&forms) == b.adjoint(&forms) * a.adjoint(&forms));
  REQUIRE(a.adjoint(&forms).adjoint(&forms) == a);
  REQUIRE(AlgTensor::unit(s, 2).adjoint(&forms) == AlgTensor::unit(s, 2));
}

TEST_CASE("partial inverses") {
  std::mt19937 rng(505);
  ShapePtr s = shape_abc();

  SECTION("invertible element with p = I recovers the ordinary inverse") {
    AlgTensor u = random_invertible(s, rng);
    AlgTensor id = AlgTensor::unit(s, 1);
    auto [uinv, q] = partial_inverse(u, id);
    REQUIRE(uinv * u == id);
    REQUIRE(u * uinv == id);
    REQUIRE(q == id);
    // dense solve oracle per block
    for (int r = 0; r < s->nblocks(); ++r) {
      auto inv = lin::inverse(*u.find({r}));
      REQUIRE(inv.has_value());
      REQUIRE(*uinv.find({r}) == *inv);
    }
    // round trip
    auto [u2, p2] = partial_inverse(uinv, q);
    REQUIRE(u2 == u);
    REQUIRE(p2 == id);
  }

  SECTION("idempotent is its own partial inverse") {
    AlgTensor p(s, 1);
    p.add_to({0}, 0, 0, Cyc::one());
    p.add_to({2}, 0, 0, Cyc::one());
    p.add_to({2}, 2, 2, Cyc::one());
    auto [pinv, q] = partial_inverse(p, p);
    REQUIRE(pinv == p);
    REQUIRE(q == p);
  }

  SECTION("diagonal projector corner: round trip recovers the element") {
    AlgTensor p(s, 1);
    p.add_to({0}, 1, 1, Cyc::one());
    p.add_to({2}, 0, 0, Cyc::one());
    p.add_to({2}, 1, 1, Cyc::one());
    // q-corner element: u p with u invertible, then cut to the corner
    AlgTensor u = random_invertible(s, rng);
    AlgTensor t = u * p;
    auto [tinv, q] = partial_inverse(t, p);
    REQUIRE(tinv * t == p);
    REQUIRE(t * tinv == q);
    REQUIRE(q * q == q);
    auto [t2, p2] = partial_inverse(tinv, q);
    REQUIRE(t2 == t);
    REQUIRE(p2 == p);
  }

  SECTION("rank-deficient element is rejected") {
    AlgTensor p(s, 1);
    p.add_to({0}, 0, 0, Cyc::one());
    p.add_to({0}, 1, 1, Cyc::one());
    AlgTensor t(s, 1);
    t.add_to({0}, 0, 0, Cyc::one());
    t.add_to({0}, 0, 1, Cyc::one());  // kills (1,-1): rank 1 on a rank-2 domain
    REQUIRE_THROWS_AS(partial_inverse(t, p), std::domain_error);
  }

  SECTION("non-idempotent domain is rejected") {
    AlgTensor p(s, 1);
    p.add_to({0}, 0, 0, Cyc(2));
    REQUIRE_THROWS_AS(partial_inverse(p, p), std::invalid_argument);
  }
}

TEST_CASE("coproduct tables: group convolution on Fun(Z_3)") {
  long n = 3;
  auto s = std::make_shared<BlockShape>();
  for (long g = 0; g < n; ++g) {
    s->labels.push_back("g" + std::to_string(g));
    s->dims.push_back(1);
  }
  CoproductMap delta;
  delta.init(s);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      delta.add_entry(g, 0, 0, h, 0, 0, (g - h + n) % n, 0, 0, Cyc::one());

  SECTION("values on delta functions") {
    for (int g = 0; g < n; ++g) {
      AlgTensor dg = delta.delta_unit(g, 0, 0);
      for (int h = 0; h < n; ++h)
        for (int k = 0; k < n; ++k) {
          Cyc want = ((h + k) % n == g) ? Cyc::one() : Cyc::zero();
          REQUIRE(dg.get({h, k}, 0, 0) == want);
        }
    }
  }

  SECTION("delta of the identity is the full unit (unital coproduct)") {
    REQUIRE(delta.delta_of_identity() == AlgTensor::unit(s, 2));
  }

  SECTION("coproduct_slot: coassociativity and slot independence") {
    std::mt19937 rng(606);
    AlgTensor a = random_tensor(s, 1, rng, 70);
    AlgTensor da = delta.of(a);
    REQUIRE(coproduct_slot(delta, da, 0) == coproduct_slot(delta, da, 1));

    // applying delta in the second slot of a simple tensor touches only it
    AlgTensor b = random_tensor(s, 1, rng, 70);
    REQUIRE(coproduct_slot(delta, a.outer(b), 1) == a.outer(delta.of(b)));
  }

  SECTION("apply_counit undoes the coproduct") {
    std::mt19937 rng(707);
    AlgTensor a = random_tensor(s, 1, rng, 70);
    AlgTensor da = delta.of(a);
    REQUIRE(apply_counit(da, 0, 0) == a);
    REQUIRE(apply_counit(da, 1, 0) == a);
  }
}
