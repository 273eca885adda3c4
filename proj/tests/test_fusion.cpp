#include <catch2/catch_amalgamated.hpp>

#include "wqh/fusion.hpp"

#include <cmath>
#include <sstream>

using namespace wqh;

namespace {

long idx(const BasedRing& r, const std::string& label) {
  for (long i = 0; i < r.size(); ++i)
    if (r.labels[static_cast<std::size_t>(i)] == label) return i;
  FAIL("label not found: " << label);
  return -1;
}

// expands X_i X_j as a vector of labels with multiplicity
std::vector<std::string> product(const BasedRing& r, const std::string& a, const std::string& b) {
  std::vector<std::string> out;
  long i = idx(r, a), j = idx(r, b);
  for (long k = 0; k < r.size(); ++k)
    for (long c = 0; c < r.coeff(i, j, k); ++c) out.push_back(r.labels[static_cast<std::size_t>(k)]);
  return out;
}

}  // namespace

TEST_CASE("sl2 Verlinde rings match the closed truncation formula") {
  REQUIRE_THROWS_AS(sl2_verlinde(0), std::invalid_argument);

  BasedRing r1 = sl2_verlinde(1);
  REQUIRE(r1.size() == 2);
  REQUIRE(product(r1, "X1", "X1") == std::vector<std::string>{"X0"});

  BasedRing r2 = sl2_verlinde(2);
  REQUIRE(product(r2, "X1", "X1") == std::vector<std::string>{"X0", "X2"});
  REQUIRE(product(r2, "X1", "X2") == std::vector<std::string>{"X1"});
  REQUIRE(product(r2, "X2", "X2") == std::vector<std::string>{"X0"});

  for (long k = 1; k <= 6; ++k) {
    BasedRing r = sl2_verlinde(k);
    REQUIRE(r.size() == k + 1);
    REQUIRE(r.verify().all_passed());
    for (long i = 0; i <= k; ++i) {
      REQUIRE(r.dual[static_cast<std::size_t>(i)] == i);
      for (long j = 0; j <= k; ++j)
        for (long m = 0; m <= k; ++m) {
          bool in = (m % 2 == (i + j) % 2) && m >= std::labs(i - j) && m <= i + j &&
                    m <= 2 * k - i - j;
          REQUIRE(r.coeff(i, j, m) == (in ? 1 : 0));
        }
    }
  }
}

TEST_CASE("rank one Verlinde rings agree with the sl2 closed form") {
  for (long ell = 3; ell <= 8; ++ell) {
    BasedRing big = slN_verlinde(2, ell);
    BasedRing small = sl2_verlinde(ell - 2);
    REQUIRE(big.size() == small.size());
    REQUIRE(big.unit == small.unit);
    REQUIRE(big.dual == small.dual);
    REQUIRE(big.n == small.n);  // alcove order for rank one is X(0), X(1), ...
  }
}

TEST_CASE("sl3 Verlinde tables at small level") {
  SECTION("level one is the pointed Z3 ring") {
    BasedRing r = slN_verlinde(3, 4);
    REQUIRE(r.size() == 3);
    REQUIRE(r.verify().all_passed());
    REQUIRE(product(r, "X(1,0)", "X(1,0)") == std::vector<std::string>{"X(0,1)"});
    REQUIRE(product(r, "X(1,0)", "X(0,1)") == std::vector<std::string>{"X(0,0)"});
    REQUIRE(product(r, "X(0,1)", "X(0,1)") == std::vector<std::string>{"X(1,0)"});
    REQUIRE(r.dual[idx(r, "X(1,0)")] == idx(r, "X(0,1)"));
    for (long v : r.n) REQUIRE((v == 0 || v == 1));
  }

  SECTION("level two carries the golden object") {
    BasedRing r = slN_verlinde(3, 5);
    REQUIRE(r.size() == 6);
    REQUIRE(r.verify().all_passed());
    // fundamental squares into its dual plus the symmetric square
    REQUIRE(product(r, "X(1,0)", "X(1,0)") == std::vector<std::string>{"X(0,1)", "X(2,0)"});
    // fundamental times conjugate: unit plus adjoint
    REQUIRE(product(r, "X(1,0)", "X(0,1)") == std::vector<std::string>{"X(0,0)", "X(1,1)"});
    // the adjoint obeys the golden rule at this level
    REQUIRE(product(r, "X(1,1)", "X(1,1)") == std::vector<std::string>{"X(0,0)", "X(1,1)"});
    // simple current pair
    REQUIRE(product(r, "X(2,0)", "X(2,0)") == std::vector<std::string>{"X(0,2)"});
    REQUIRE(product(r, "X(2,0)", "X(0,2)") == std::vector<std::string>{"X(0,0)"});
    REQUIRE(product(r, "X(1,0)", "X(1,1)") == std::vector<std::string>{"X(1,0)", "X(0,2)"});

    // coefficients are symmetric under the duality relabeling
    for (long i = 0; i < r.size(); ++i)
      for (long j = 0; j < r.size(); ++j)
        for (long k = 0; k < r.size(); ++k)
          REQUIRE(r.coeff(i, j, k) ==
                  r.coeff(r.dual[static_cast<std::size_t>(i)], r.dual[static_cast<std::size_t>(j)],
                          r.dual[static_cast<std::size_t>(k)]));
  }

  SECTION("away from the walls the classical rule survives") {
    BasedRing r = slN_verlinde(3, 7);
    REQUIRE(product(r, "X(1,0)", "X(1,0)") == std::vector<std::string>{"X(0,1)", "X(2,0)"});
    REQUIRE(product(r, "X(1,0)", "X(0,1)") == std::vector<std::string>{"X(0,0)", "X(1,1)"});
  }

  SECTION("order parameter below the rank bound is rejected") {
    REQUIRE_THROWS_AS(slN_verlinde(3, 3), std::invalid_argument);
    REQUIRE_THROWS_AS(slN_verlinde(1, 5), std::invalid_argument);
  }
}

TEST_CASE("weight systems and the invariant form") {
  // <Lambda_i, Lambda_j> = min(i,j) - ij/N
  WeightData wd = weight_data(4, 6);
  for (long i = 1; i <= 3; ++i)
    for (long j = 1; j <= 3; ++j) {
      std::vector<long> li(3, 0), lj(3, 0);
      li[static_cast<std::size_t>(i - 1)] = 1;
      lj[static_cast<std::size_t>(j - 1)] = 1;
      REQUIRE(wd.form(li, lj) == Rat(std::min(i, j)) - rat_frac(i * j, 4));
    }

  // sl2 string: weights m, m-2, ..., -m with multiplicity one
  auto line = typea::weight_system(2, {3});
  REQUIRE(line.size() == 4);
  for (const auto& [p, m] : line) REQUIRE(m == 1);

  // sl3 adjoint: six roots of multiplicity one around a double zero weight
  auto adj = typea::weight_system(3, {1, 1});
  long total = 0, top = 0;
  for (const auto& [p, m] : adj) {
    total += m;
    top = std::max(top, m);
  }
  REQUIRE(total == 8);
  REQUIRE(top == 2);
  REQUIRE(adj.size() == 7);

  // dimension of the sl3 27 as a Freudenthal stress test
  auto big = typea::weight_system(3, {2, 2});
  long dim = 0;
  for (const auto& [p, m] : big) dim += m;
  REQUIRE(dim == 27);
}

TEST_CASE("Frobenius-Perron dimensions carry certified intervals") {
  SECTION("the unit is pinned exactly") {
    BasedRing r = sl2_verlinde(3);
    FpBound fp = fp_dimension(r, r.unit);
    REQUIRE(fp.lo == 1);
    REQUIRE(fp.hi == 1);
  }

  SECTION("sl2 generator matches 2 cos(pi / (k+2))") {
    for (long k = 1; k <= 6; ++k) {
      BasedRing r = sl2_verlinde(k);
      FpBound fp = fp_dimension(r, 1);
      double closed = 2.0 * std::cos(M_PI / static_cast<double>(k + 2));
      REQUIRE(std::abs(fp.value - closed) < 1e-9);
      REQUIRE(rat_double(fp.hi) - rat_double(fp.lo) < 1e-9);
      REQUIRE(rat_double(fp.lo) <= closed + 1e-12);
      REQUIRE(closed <= rat_double(fp.hi) + 1e-12);
    }
  }

  SECTION("pointed rings have every dimension exactly one") {
    BasedRing r = slN_verlinde(3, 4);
    for (long i = 0; i < r.size(); ++i) {
      FpBound fp = fp_dimension(r, i);
      REQUIRE(fp.lo == 1);
      REQUIRE(fp.hi == 1);
    }
  }

  SECTION("multiplicativity within the certified bound") {
    BasedRing r = sl2_verlinde(3);
    std::vector<double> fpv;
    for (long i = 0; i < r.size(); ++i) fpv.push_back(fp_dimension(r, i).value);
    for (long i = 0; i < r.size(); ++i)
      for (long j = 0; j < r.size(); ++j) {
        double sum = 0;
        for (long k = 0; k < r.size(); ++k)
          sum += static_cast<double>(r.coeff(i, j, k)) * fpv[static_cast<std::size_t>(k)];
        REQUIRE(std::abs(sum - fpv[static_cast<std::size_t>(i)] * fpv[static_cast<std::size_t>(j)]) < 1e-8);
      }
  }
}

TEST_CASE("weak dimension functions") {
  SECTION("classical dimensions pass on sl2 rings") {
    BasedRing r = sl2_verlinde(3);
    std::vector<Rat> d = {Rat(1), Rat(2), Rat(3), Rat(4)};
    WdfCheck chk = is_weak_dimension_function(r, d, true);
    REQUIRE(chk.ok);
    REQUIRE(chk.witness.empty());
  }

  SECTION("the constant function at the maximal multiplicity passes") {
    BasedRing r = sl2_verlinde(3);
    std::vector<Rat> d = {Rat(1), Rat(2), Rat(2), Rat(2)};
    REQUIRE(is_weak_dimension_function(r, d).ok);
  }

  SECTION("the all-ones function fails at the first honest pair") {
    BasedRing r = sl2_verlinde(2);
    std::vector<Rat> d = {Rat(1), Rat(1), Rat(1)};
    WdfCheck chk = is_weak_dimension_function(r, d);
    REQUIRE_FALSE(chk.ok);
    REQUIRE(chk.witness.find("X1") != std::string::npos);
    REQUIRE(chk.witness.find("2 > 1") != std::string::npos);
  }

  SECTION("classical sl3 dimensions pass with dual symmetry") {
    BasedRing r = slN_verlinde(3, 5);
    std::vector<Rat> d(static_cast<std::size_t>(r.size()));
    d[static_cast<std::size_t>(idx(r, "X(0,0)"))] = 1;
    d[static_cast<std::size_t>(idx(r, "X(1,0)"))] = 3;
    d[static_cast<std::size_t>(idx(r, "X(0,1)"))] = 3;
    d[static_cast<std::size_t>(idx(r, "X(2,0)"))] = 6;
    d[static_cast<std::size_t>(idx(r, "X(0,2)"))] = 6;
    d[static_cast<std::size_t>(idx(r, "X(1,1)"))] = 8;
    REQUIRE(is_weak_dimension_function(r, d, true).ok);
  }

  SECTION("ill-formed inputs are named in the witness") {
    BasedRing r = sl2_verlinde(1);
    REQUIRE_FALSE(is_weak_dimension_function(r, {Rat(2), Rat(1)}).ok);
    REQUIRE_FALSE(is_weak_dimension_function(r, {Rat(1), Rat(-1)}).ok);
    REQUIRE_FALSE(is_weak_dimension_function(r, {Rat(1)}).ok);
  }
}

TEST_CASE("integral weak dimension functions") {
  SECTION("sl2 level two from its Frobenius-Perron data") {
    BasedRing r = sl2_verlinde(2);
    std::vector<double> d;
    for (long i = 0; i < r.size(); ++i) d.push_back(fp_dimension(r, i).value);
    std::vector<Rat> big = integral_wdf(r, d, 4);
    REQUIRE(big == std::vector<Rat>{Rat(1), Rat(4), Rat(4)});
    REQUIRE(is_weak_dimension_function(r, big).ok);
  }

  SECTION("pointed rings scale the constant function") {
    BasedRing r = slN_verlinde(3, 4);
    std::vector<Rat> big = integral_wdf(r, {1.0, 1.0, 1.0}, 4);
    for (long i = 0; i < r.size(); ++i)
      REQUIRE(big[static_cast<std::size_t>(i)] == (i == r.unit ? Rat(1) : Rat(4)));
  }

  SECTION("preconditions") {
    BasedRing r = sl2_verlinde(2);
    REQUIRE_THROWS_AS(integral_wdf(r, {1.0, 1.4, 1.0}, 3), std::invalid_argument);
    REQUIRE_THROWS_AS(integral_wdf(r, {1.0, 0.5, 1.0}, 4), std::invalid_argument);
    REQUIRE_THROWS_AS(integral_wdf(r, {1.0, 1.4}, 4), std::invalid_argument);
  }
}

TEST_CASE("quantum dimensions from the q-Weyl formula") {
  SECTION("sl2 columns are quantum integers") {
    WeightData wd = weight_data(2, 5);
    for (long i = 0; i <= 3; ++i) REQUIRE(qdim(wd, {i}) == q_integer(i + 1, 10));
    REQUIRE(qdim(wd, {0}) == Cyc::one());
  }

  SECTION("the generator dimension squares to two at ell = 4") {
    WeightData wd = weight_data(2, 4);
    Cyc d = qdim(wd, {1});
    REQUIRE(d * d == Cyc(2));
  }

  SECTION("the boundary of the closed alcove has dimension zero") {
    WeightData wd = weight_data(2, 4);
    REQUIRE(qdim(wd, {3}).is_zero());
  }

  SECTION("fundamental representations give [N]_q") {
    REQUIRE(qdim(weight_data(3, 5), {1, 0}) == q_integer(3, 10));
    REQUIRE(qdim(weight_data(4, 6), {1, 0, 0}) == q_integer(4, 12));
  }

  SECTION("golden dimensions in the sl3 level two ring") {
    WeightData wd = weight_data(3, 5);
    Cyc phi = qdim(wd, {1, 1});
    REQUIRE(phi * phi == phi + Cyc::one());  // x^2 = x + 1
    REQUIRE(qdim(wd, {2, 0}) == Cyc::one()); // simple current
    REQUIRE(qdim(wd, {1, 0}) == phi);
  }
}

TEST_CASE("ribbon values") {
  SECTION("sl2 exponents are half integers over the base order") {
    WeightData wd = weight_data(2, 4);
    for (long i = 0; i <= 2; ++i)
      REQUIRE(ribbon_theta(wd, {i}) == Cyc::root(16, i * (i + 2)));
    REQUIRE(ribbon_theta(wd, {0}) == Cyc::one());
  }

  SECTION("sl3 Casimir values are thirds") {
    WeightData wd = weight_data(3, 4);
    REQUIRE(wd.casimir({1, 0}) == rat_frac(8, 3));
    REQUIRE(wd.casimir({2, 0}) == rat_frac(20, 3));
    REQUIRE(ribbon_theta(wd, {1, 0}) == Cyc::root(3, 1));
    REQUIRE(ribbon_theta(wd, {0, 1}) == Cyc::root(3, 1));
  }
}

TEST_CASE("modular data") {
  SECTION("sl2 level one gives the two-dimensional discrete transform") {
    BasedRing r = sl2_verlinde(1);
    WeightData wd = weight_data(2, 3);
    std::vector<Cyc> theta = {ribbon_theta(wd, {0}), ribbon_theta(wd, {1})};
    std::vector<Cyc> dim = {qdim(wd, {0}), qdim(wd, {1})};
    REQUIRE(theta[1] == Cyc::root(4, 1));
    REQUIRE(dim[1] == Cyc::one());

    ModularData md = modular_data(r, theta, dim);
    REQUIRE(md.modular);
    Mat expect(2, 2);
    expect.set(0, 0, Cyc::one());
    expect.set(0, 1, Cyc::one());
    expect.set(1, 0, Cyc::one());
    expect.set(1, 1, Cyc(-1));
    REQUIRE(md.s == expect);
    REQUIRE(md.t.get(1, 1) == Cyc::root(4, 3));
  }

  SECTION("sl2 level two is modular with the expected S entries") {
    BasedRing r = sl2_verlinde(2);
    WeightData wd = weight_data(2, 4);
    std::vector<Cyc> theta, dim;
    for (long i = 0; i <= 2; ++i) {
      theta.push_back(ribbon_theta(wd, {i}));
      dim.push_back(qdim(wd, {i}));
    }
    ModularData md = modular_data(r, theta, dim);
    REQUIRE(md.modular);
    Cyc root2 = q_integer(2, 8);
    REQUIRE(md.s.get(0, 1) == root2);
    REQUIRE(md.s.get(1, 1).is_zero());
    REQUIRE(md.s.get(1, 2) == Cyc(-1) * root2);
    REQUIRE(md.s.get(2, 2) == Cyc::one());
  }

  SECTION("the pointed Z3 ring with its ribbon is modular") {
    BasedRing r = slN_verlinde(3, 4);
    WeightData wd = weight_data(3, 4);
    std::vector<Cyc> theta, dim;
    for (const auto& la : wd.alcove) {
      theta.push_back(ribbon_theta(wd, la));
      dim.push_back(qdim(wd, la));
    }
    ModularData md = modular_data(r, theta, dim);
    REQUIRE(md.modular);
  }

  SECTION("a symmetric braiding on Z2 is flagged as not modular") {
    BasedRing r = sl2_verlinde(1);
    ModularData md = modular_data(r, {Cyc::one(), Cyc::one()}, {Cyc::one(), Cyc::one()});
    REQUIRE_FALSE(md.modular);
    bool saw = false;
    for (const auto& c : md.report.checks)
      if (c.name == "s_invertible") {
        REQUIRE(c.verdict == Verdict::Fail);
        REQUIRE(c.witness.find("singular") != std::string::npos);
        saw = true;
      }
    REQUIRE(saw);
  }

  SECTION("size mismatches are rejected") {
    BasedRing r = sl2_verlinde(1);
    REQUIRE_THROWS_AS(modular_data(r, {Cyc::one()}, {Cyc::one(), Cyc::one()}),
                      std::invalid_argument);
  }
}

TEST_CASE("ring files round trip") {
  BasedRing r = sl2_verlinde(3);
  std::ostringstream os;
  save_ring(os, r);
  std::istringstream is(os.str());
  BasedRing back = load_ring(is);
  REQUIRE(back.labels == r.labels);
  REQUIRE(back.unit == r.unit);
  REQUIRE(back.dual == r.dual);
  REQUIRE(back.n == r.n);
  REQUIRE(back.verify().all_passed());

  SECTION("parse errors carry the offending line") {
    std::istringstream bad1("nonsense");
    REQUIRE_THROWS_AS(load_ring(bad1), std::runtime_error);
    std::istringstream bad2("basedring 1\nlabels a b\nunit a\nduals a b\ntriple a b zz 1\n");
    REQUIRE_THROWS_AS(load_ring(bad2), std::runtime_error);
    std::istringstream bad3("basedring 1\nlabels a b\nunit a\nduals a\n");
    REQUIRE_THROWS_AS(load_ring(bad3), std::runtime_error);
  }

  SECTION("the verifier catches a corrupted table") {
    BasedRing bad = sl2_verlinde(2);
    bad.set_coeff(1, 1, 2, 2);
    Report rep = bad.verify();
    REQUIRE(rep.any_failed());
    bool frob = false;
    for (const auto& c : rep.checks)
      if (c.name == "frobenius_reciprocity" && c.verdict == Verdict::Fail) frob = true;
    REQUIRE(frob);
  }
}
