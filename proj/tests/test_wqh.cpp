// Verifier coverage on function algebras of cyclic groups: these carry
// arbitrary associators while staying small enough to check entry by entry.

#include <wqh/pointed.hpp>
#include <wqh/presentation.hpp>
#include <wqh/verify.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <sstream>

using namespace wqh;

namespace {

Verdict verdict_of(const Report& rep, const std::string& name) {
  for (const auto& c : rep.checks)
    if (c.name == name) return c.verdict;
  FAIL("no check named " + name);
  return Verdict::Indeterminate;
}

bool same_delta(const WqhPresentation& a, const WqhPresentation& b) {
  const BlockShape& s = *a.shape;
  for (int r = 0; r < s.nblocks(); ++r) {
    long d = s.dims[static_cast<size_t>(r)];
    for (long i = 0; i < d; ++i)
      for (long j = 0; j < d; ++j)
        if (!(a.delta.delta_unit(r, i, j) == b.delta.delta_unit(r, i, j))) return false;
  }
  return true;
}

bool same_antipode_map(const WqhPresentation& a, const WqhPresentation& b) {
  const BlockShape& s = *a.shape;
  for (int r = 0; r < s.nblocks(); ++r) {
    long d = s.dims[static_cast<size_t>(r)];
    for (long i = 0; i < d; ++i)
      for (long j = 0; j < d; ++j)
        if (!(a.antipode->s.of_unit(r, i, j) == b.antipode->s.of_unit(r, i, j)))
          return false;
  }
  return true;
}

// diagonal coboundary twist (u⊗u)Δ(u⁻¹) from scalars u_g with u_0 = 1
Twist scalar_coboundary_twist(const WqhPresentation& w, const std::vector<Cyc>& u) {
  long n = w.shape->nblocks();
  Twist T{AlgTensor(w.shape, 2), AlgTensor(w.shape, 2)};
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      Cyc c = u[static_cast<size_t>(g)] * u[static_cast<size_t>(h)] *
              u[static_cast<size_t>((g + h) % n)].inverse();
      T.t.add_to({g, h}, 0, 0, c);
      T.tinv.add_to({g, h}, 0, 0, c.inverse());
    }
  return T;
}

// diagonal twist from a normalized 2-cochain given directly (may fail the
// cocycle equation; that is the point)
Twist cochain_twist_raw(const WqhPresentation& w, const TwoCochain& f) {
  long n = f.n;
  Twist T{AlgTensor(w.shape, 2), AlgTensor(w.shape, 2)};
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      T.t.add_to({g, h}, 0, 0, f.at(g, h));
      T.tinv.add_to({g, h}, 0, 0, f.at(g, h).inverse());
    }
  return T;
}

}  // namespace

TEST_CASE("function algebra of Z_2, trivial associator: all axioms hold") {
  WqhPresentation w = fun_omega(2, ThreeCocycle::trivial(2));

  Report wqb = verify_wqb(w);
  INFO(wqb.to_text());
  REQUIRE(wqb.all_passed());

  Report ap = verify_antipode(w);
  INFO(ap.to_text());
  REQUIRE(ap.all_passed());

  Report wb = is_w_bialgebra(w);
  INFO(wb.to_text());
  REQUIRE(wb.all_passed());

  StrongAntipodeResult sa = strong_antipode(w);
  REQUIRE(sa.found);
  REQUIRE(sa.report.all_passed());

  REQUIRE(hopf_degeneracy_check(w));
}

TEST_CASE("function algebra of Z_2 with the order-2 associator") {
  ThreeCocycle om = omega_w(2, Cyc(-1));
  REQUIRE(om.is_cocycle());
  WqhPresentation w = fun_omega(2, om);

  SECTION("all axiom families pass") {
    REQUIRE(verify_wqb(w).all_passed());
    REQUIRE(verify_antipode(w).all_passed());
  }

  SECTION("the coproduct satisfies the intertwining laws, but the associator "
          "is not the canonical one") {
    Report wb = is_w_bialgebra(w);
    CHECK(verdict_of(wb, "coproduct_intertwining") == Verdict::Pass);
    CHECK(verdict_of(wb, "p3q3p3") == Verdict::Pass);
    CHECK(verdict_of(wb, "q3p3q3") == Verdict::Pass);
    CHECK(verdict_of(wb, "cocycle_degree4") == Verdict::Pass);
    CHECK(verdict_of(wb, "phi_is_q3p3") == Verdict::Fail);
  }

  SECTION("no strong antipode: alpha is not invertible against beta") {
    StrongAntipodeResult sa = strong_antipode(w);
    REQUIRE_FALSE(sa.found);
    REQUIRE_FALSE(sa.witness.empty());
  }

  SECTION("corrupting one associator entry breaks exactly the pentagon") {
    WqhPresentation bad = w;
    bad.phi.block({1, 1, 1}).set(0, 0, bad.phi.get({1, 1, 1}, 0, 0) * Cyc::root(4, 1));
    bad.phi_inv.block({1, 1, 1})
        .set(0, 0, bad.phi.get({1, 1, 1}, 0, 0).inverse());
    Report rep = verify_wqb(bad);
    CHECK(verdict_of(rep, "pentagon") == Verdict::Fail);
    CHECK(verdict_of(rep, "delta_homomorphism") == Verdict::Pass);
    CHECK(verdict_of(rep, "counit_law") == Verdict::Pass);
    CHECK(verdict_of(rep, "phi_domain_range") == Verdict::Pass);
    CHECK(verdict_of(rep, "phi_intertwining") == Verdict::Pass);
    REQUIRE(rep.any_failed());
  }

  SECTION("replacing alpha by the unit passes antip1 but fails antip2") {
    WqhPresentation bad = w;
    bad.antipode->alpha = AlgTensor::unit(w.shape, 1);
    Report rep = verify_antipode(bad);
    CHECK(verdict_of(rep, "antipode_alpha_law") == Verdict::Pass);
    CHECK(verdict_of(rep, "antipode_beta_law") == Verdict::Pass);
    CHECK(verdict_of(rep, "antip2_phi") == Verdict::Fail);
  }

  SECTION("honest-Hopf check rejects the nontrivial associator up front") {
    REQUIRE_THROWS_AS(hopf_degeneracy_check(w), std::invalid_argument);
  }
}

TEST_CASE("function algebra of Z_3 with a cube-root associator") {
  ThreeCocycle om = omega_w(3, Cyc::root(3, 1));
  REQUIRE(om.is_cocycle());
  WqhPresentation w = fun_omega(3, om);
  REQUIRE(verify_wqb(w).all_passed());
  REQUIRE(verify_antipode(w).all_passed());
  REQUIRE_FALSE(strong_antipode(w).found);
}

TEST_CASE("twisting") {
  WqhPresentation w = fun_omega(3, ThreeCocycle::trivial(3));

  SECTION("the identity twist changes nothing") {
    Twist T{w.delta_I(), w.delta_I()};
    WqhPresentation wt = twist(w, T);
    REQUIRE(same_delta(w, wt));
    REQUIRE(wt.phi == w.phi);
    REQUIRE(wt.phi_inv == w.phi_inv);
    REQUIRE(wt.antipode->alpha == w.antipode->alpha);
    REQUIRE(wt.antipode->beta == w.antipode->beta);
  }

  SECTION("a scalar coboundary twist is a 2-cocycle: nothing essential moves") {
    std::vector<Cyc> u = {Cyc(1), Cyc::root(9, 1), Cyc::root(9, 4)};
    Twist T = scalar_coboundary_twist(w, u);
    REQUIRE(is_two_cocycle(w, T));
    WqhPresentation wt = twist(w, T);
    REQUIRE(same_delta(w, wt));  // commutative algebra, diagonal conjugation
    REQUIRE(wt.phi == w.phi);    // coboundary of a coboundary collapses
    REQUIRE(verify_wqb(wt).all_passed());
    REQUIRE(verify_antipode(wt).all_passed());
    // alpha and beta pick up the scalar gauge but stay mutually inverse
    REQUIRE(strong_antipode(wt).found);
    // twisting back with the inverse twist restores everything
    Twist Tback{T.tinv, T.t};
    WqhPresentation back = twist(wt, Tback);
    REQUIRE(same_delta(w, back));
    REQUIRE(back.phi == w.phi);
    REQUIRE(back.phi_inv == w.phi_inv);
    REQUIRE(back.antipode->alpha == w.antipode->alpha);
    REQUIRE(back.antipode->beta == w.antipode->beta);
  }

  SECTION("twist composition is multiplication of the twist elements") {
    std::vector<Cyc> u1 = {Cyc(1), Cyc::root(9, 2), Cyc::root(9, 7)};
    std::vector<Cyc> u2 = {Cyc(1), Cyc::root(5, 1), Cyc::root(5, 3)};
    Twist T1 = scalar_coboundary_twist(w, u1);
    Twist T2 = scalar_coboundary_twist(w, u2);
    WqhPresentation two_steps = twist(twist(w, T1), T2);
    Twist T21{T2.t * T1.t, T1.tinv * T2.tinv};
    WqhPresentation one_step = twist(w, T21);
    REQUIRE(same_delta(two_steps, one_step));
    REQUIRE(two_steps.phi == one_step.phi);
    REQUIRE(two_steps.phi_inv == one_step.phi_inv);
    REQUIRE(two_steps.antipode->alpha == one_step.antipode->alpha);
    REQUIRE(two_steps.antipode->beta == one_step.antipode->beta);
  }

  SECTION("a malformed twist is rejected") {
    Twist T{AlgTensor::unit(w.shape, 2).scaled(Cyc(2)),
            AlgTensor::unit(w.shape, 2)};
    REQUIRE_THROWS_AS(twist(w, T), std::invalid_argument);
  }
}

TEST_CASE("2-cocycles and 3-coboundaries") {
  WqhPresentation w = fun_omega(3, ThreeCocycle::trivial(3));

  SECTION("a bilinear form on Z_3 is a 2-cocycle and twists to a w-bialgebra") {
    TwoCochain f = TwoCochain::trivial(3);
    for (long a = 0; a < 3; ++a)
      for (long b = 0; b < 3; ++b)
        f.vals[static_cast<size_t>(a * 3 + b)] = Cyc::root(3, (a * b) % 3);
    Twist T = cochain_twist_raw(w, f);
    REQUIRE(is_two_cocycle(w, T));
    WqhPresentation wt = twist(w, T);
    REQUIRE(is_w_bialgebra(wt).all_passed());
    REQUIRE(wt.phi == w.phi);  // cocycle twists keep the associator
  }

  SECTION("a non-cocycle cochain fails and its twist moves the associator") {
    TwoCochain f = TwoCochain::trivial(3);
    f.vals[static_cast<size_t>(1 * 3 + 1)] = Cyc::root(3, 1);
    Twist T = cochain_twist_raw(w, f);
    REQUIRE_FALSE(is_two_cocycle(w, T));
    WqhPresentation wt = twist(w, T);
    Report wb = is_w_bialgebra(wt);
    CHECK(verdict_of(wb, "coproduct_intertwining") == Verdict::Pass);
    CHECK(verdict_of(wb, "phi_is_q3p3") == Verdict::Fail);
    // still a legitimate quasi-bialgebra, just not a w-bialgebra
    REQUIRE(verify_wqb(wt).all_passed());
  }

  SECTION("coboundary recognition") {
    REQUIRE(is_three_coboundary(w, Twist{w.delta_I(), w.delta_I()}));
    // the order-2 associator on Z_2 is not a coboundary: try all sign cochains
    WqhPresentation w2 = fun_omega(2, omega_w(2, Cyc(-1)));
    bool any = false;
    for (int s = 0; s < 2 && !any; ++s) {
      TwoCochain f = TwoCochain::trivial(2);
      f.vals[3] = s ? Cyc(-1) : Cyc(1);
      any = is_three_coboundary(w2, cochain_twist_raw(w2, f));
    }
    REQUIRE_FALSE(any);
  }
}

TEST_CASE("f element") {
  SECTION("trivial associator: f is the unit and all relations hold") {
    for (long n : {2L, 3L}) {
      WqhPresentation w = fun_omega(n, ThreeCocycle::trivial(n));
      FElement fe = f_element(w);
      INFO(fe.report.to_text());
      REQUIRE(fe.f == AlgTensor::unit(w.shape, 2));
      REQUIRE(fe.finv == AlgTensor::unit(w.shape, 2));
      REQUIRE(fe.report.all_passed());
    }
  }

  SECTION("without a strong antipode the computation is refused") {
    WqhPresentation w = fun_omega(2, omega_w(2, Cyc(-1)));
    REQUIRE_THROWS_AS(f_element(w), std::invalid_argument);
  }
}

TEST_CASE("honest-Hopf check rejects a broken antipode before anything else") {
  // Delta(d_g) = d_0 ⊗ d_g is coassociative and multiplicative but not
  // unital, and the claimed antipode fails S(a_1)·alpha·a_2 = eps(a)·alpha.
  auto s = std::make_shared<BlockShape>();
  s->labels = {"g0", "g1"};
  s->dims = {1, 1};
  WqhPresentation w;
  w.shape = s;
  w.counit_block = 0;
  w.delta.init(s);
  for (int g = 0; g < 2; ++g) w.delta.add_entry(g, 0, 0, 0, 0, 0, g, 0, 0, Cyc::one());
  w.phi = AlgTensor(s, 3);
  w.phi.add_to({0, 0, 0}, 0, 0, Cyc::one());
  w.phi.add_to({0, 0, 1}, 0, 0, Cyc::one());
  w.phi_inv = w.phi;
  Antipode ap;
  ap.s = UnitMapTable::identity(s);
  ap.alpha = AlgTensor::unit(s, 1);
  ap.beta = AlgTensor::unit(s, 1);
  w.antipode = std::move(ap);

  REQUIRE_THROWS_WITH(hopf_degeneracy_check(w),
                      Catch::Matchers::ContainsSubstring("antipode axioms fail"));
}

TEST_CASE("counit interacts with antipode and star") {
  WqhPresentation w = fun_omega(4, omega_w(4, Cyc::root(4, 1)));
  for (int g = 0; g < 4; ++g) {
    AlgTensor e = w.matrix_unit(g, 0, 0);
    REQUIRE(w.counit_of(w.s_of(e)) == w.counit_of(e));
    REQUIRE(w.counit_of(w.adjoint(e)) == w.counit_of(e).conj());
  }
}

TEST_CASE("presentation files round trip") {
  SECTION("pointed presentation with antipode") {
    PresentationFile pf;
    pf.w = fun_omega(3, omega_w(3, Cyc::root(3, 2)));
    std::ostringstream first;
    save_presentation(first, pf);

    std::istringstream in(first.str());
    PresentationFile back = load_presentation(in);
    REQUIRE(*back.w.shape == *pf.w.shape);
    REQUIRE(back.w.counit_block == pf.w.counit_block);
    REQUIRE(back.w.star == pf.w.star);
    REQUIRE(same_delta(back.w, pf.w));
    REQUIRE(back.w.phi == pf.w.phi);
    REQUIRE(back.w.phi_inv == pf.w.phi_inv);
    REQUIRE(back.w.antipode.has_value());
    REQUIRE(same_antipode_map(back.w, pf.w));
    REQUIRE(back.w.antipode->alpha == pf.w.antipode->alpha);
    REQUIRE(back.w.antipode->beta == pf.w.antipode->beta);

    std::ostringstream second;
    save_presentation(second, back);
    REQUIRE(first.str() == second.str());
  }

  SECTION("quasitriangular sections round trip too") {
    PresentationFile pf;
    pf.w = fun_omega(2, ThreeCocycle::trivial(2));
    QuasiTriData qt;
    qt.r = AlgTensor::unit(pf.w.shape, 2);
    qt.rinv = qt.r;
    AlgTensor v = AlgTensor::unit(pf.w.shape, 1);
    v.block({1}).set(0, 0, Cyc(-1));
    qt.ribbon_v = v;
    qt.omega = qt.r;
    qt.omega_inv = qt.r;
    pf.qt = qt;

    std::ostringstream first;
    save_presentation(first, pf);
    std::istringstream in(first.str());
    PresentationFile back = load_presentation(in);
    REQUIRE(back.qt.has_value());
    REQUIRE(back.qt->r == qt.r);
    REQUIRE(back.qt->rinv == qt.rinv);
    REQUIRE(back.qt->ribbon_v.has_value());
    REQUIRE(*back.qt->ribbon_v == v);
    REQUIRE(back.qt->omega.has_value());
    REQUIRE(*back.qt->omega == qt.r);
    std::ostringstream second;
    save_presentation(second, back);
    REQUIRE(first.str() == second.str());
  }

  SECTION("malformed headers are rejected") {
    std::istringstream bad("not a presentation\n");
    REQUIRE_THROWS_AS(load_presentation(bad), std::runtime_error);
  }
}
