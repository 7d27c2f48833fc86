#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "generators.hpp"

#include "cyclostark/lattice.hpp"

using namespace cyclostark;

namespace {

QG norm_element(const GroupPtr& g) {
  QG n = qg_zero(g);
  for (std::size_t a = 0; a < g->order(); ++a) n[a] = 1;
  return n;
}

QGMatrix one_by_one(const QG& x) {
  QGMatrix m = qg_matrix(x.group(), 1, 1);
  m(0, 0) = x;
  return m;
}

// Laplace expansion along the first row.
QG cofactor_det(const std::vector<QG>& m, std::size_t r) {
  if (r == 1) return m[0];
  QG out = qg_zero(m[0].group());
  for (std::size_t j = 0; j < r; ++j) {
    std::vector<QG> minor;
    for (std::size_t i = 1; i < r; ++i)
      for (std::size_t k = 0; k < r; ++k)
        if (k != j) minor.push_back(m[i * r + k]);
    QG term = m[j] * cofactor_det(minor, r - 1);
    out = (j % 2 == 0) ? out + term : out - term;
  }
  return out;
}

}  // namespace

TEST_CASE("Hom(Z, Z[G]) is spanned by the norm element") {
  for (long n : {2, 3, 4}) {
    auto g = FiniteGroup::abelian({n});
    auto h = hom_lattice(GLattice::trivial(g), GLattice::regular(g));
    REQUIRE(h.maps.size() == 1);
    QG v = evaluate_functional(h, 0, {Rat(1)});
    CHECK((v == norm_element(g) || v == -norm_element(g)));
  }
}

TEST_CASE("Hom between free modules has rank n m |G|") {
  gen::Rng r(31);
  for (int it = 0; it < 10; ++it) {
    auto g = gen::small_abelian(r, 4);
    const std::size_t n = static_cast<std::size_t>(r.uniform(1, 2)), m = static_cast<std::size_t>(r.uniform(1, 2));
    auto h = hom_lattice(GLattice::free(g, n), GLattice::free(g, m));
    CHECK(h.maps.size() == n * m * g->order());
  }
}

TEST_CASE("classical Fitting ideals of small presentations") {
  auto g = FiniteGroup::abelian({2});
  const QG c = qg_basis(g, 1), one = qg_one(g);
  SUBCASE("Z[G]/2") {
    Presentation p{g, one_by_one(one.scaled(Rat(2)))};
    CHECK(classical_fitting_ideal(p, 0) == IdealLattice::generated_by(g, {one.scaled(Rat(2))}));
    CHECK(classical_fitting_ideal(p, 1) == IdealLattice::unit(g));
  }
  SUBCASE("Z with trivial action") {
    Presentation p{g, one_by_one(c - one)};
    CHECK(classical_fitting_ideal(p, 0) == IdealLattice::generated_by(g, {one - c}));
    CHECK(classical_fitting_ideal(p, 1) == IdealLattice::unit(g));
  }
  SUBCASE("fewer relations than generators") {
    QGMatrix m = qg_matrix(g, 1, 2);
    m(0, 0) = one;
    Presentation p{g, m};
    CHECK(classical_fitting_ideal(p, 0) == IdealLattice::zero(g));
    CHECK(classical_fitting_ideal(p, 1) == IdealLattice::unit(g));
  }
}

TEST_CASE("Fitting ideals are presentation independent and increasing") {
  gen::Rng r(32);
  for (int it = 0; it < 60; ++it) {
    auto g = gen::small_abelian(r, 4);
    const std::size_t dp = static_cast<std::size_t>(r.uniform(1, 2));
    const std::size_t d = dp + static_cast<std::size_t>(r.uniform(0, 1));
    Presentation p{g, gen::random_matrix(r, g, d, dp, 2)};
    Presentation q{g, gen::remix_presentation(r, p.matrix, 4)};
    IdealLattice prev;
    for (long a = 0; a <= static_cast<long>(dp); ++a) {
      auto fa = classical_fitting_ideal(p, a);
      CHECK(classical_fitting_ideal(q, a) == fa);
      if (a > 0) CHECK(fa.contains(prev));
      CHECK(fa.is_ideal());
      prev = fa;
    }
  }
}

TEST_CASE("the minor construction agrees with the classical one over abelian groups") {
  gen::Rng r(33);
  int compared = 0;
  for (int it = 0; it < 200; ++it) {
    auto g = gen::small_abelian(r, 4);
    const std::size_t dp = static_cast<std::size_t>(r.uniform(1, 2));
    const std::size_t d = dp + static_cast<std::size_t>(r.uniform(0, 1));
    QGMatrix m = gen::random_matrix(r, g, d, dp, 2);
    const long a = r.uniform(0, static_cast<long>(dp) - 1);
    CHECK(minor_fitting_invariant(m, a) == classical_fitting_ideal({g, m}, a));
    ++compared;
  }
  CHECK(compared == 200);
}

TEST_CASE("presentation_of recovers the module") {
  gen::Rng r(34);
  for (int it = 0; it < 20; ++it) {
    auto g = gen::small_abelian(r, 4);
    auto free2 = GLattice::free(g, 2);
    // Finite-index G-sublattices present free modules up to Fitting ideals.
    auto p = presentation_of(free2);
    CHECK(classical_fitting_ideal(p, 2) == IdealLattice::unit(g));
    CHECK(classical_fitting_ideal(p, 1) == IdealLattice::zero(g));
  }
  auto g = FiniteGroup::abelian({3});
  auto p = presentation_of(GLattice::trivial(g));
  // Z = Z[G]/(1 - sigma): Fit^0 = (1 - sigma), Fit^1 = Z[G].
  CHECK(classical_fitting_ideal(p, 0) == IdealLattice::generated_by(g, {qg_one(g) - qg_basis(g, 1)}));
  CHECK(classical_fitting_ideal(p, 1) == IdealLattice::unit(g));
}

TEST_CASE("wedge pairing is a determinant") {
  gen::Rng r(35);
  for (int it = 0; it < 60; ++it) {
    auto g = gen::small_abelian(r, 6);
    const std::size_t k = static_cast<std::size_t>(r.uniform(1, 3));
    std::vector<QG> vals;
    for (std::size_t i = 0; i < k * k; ++i) vals.push_back(gen::small_qg(r, g, 2));
    CHECK(wedge_pairing(vals, k) == cofactor_det(vals, k));
  }
}

TEST_CASE("exterior powers and Rubin lattices") {
  SUBCASE("r = 0 gives Z[G]") {
    auto g = FiniteGroup::abelian({3});
    auto e = exterior_power(GLattice::free(g, 2), 0);
    CHECK(e.rank() == g->order());
    CHECK(rubin_lattice(GLattice::free(g, 2), 0) == e);
  }
  SUBCASE("free modules: Rubin lattice equals the exterior power") {
    gen::Rng r(36);
    for (int it = 0; it < 8; ++it) {
      auto g = gen::small_abelian(r, 4);
      const std::size_t n = static_cast<std::size_t>(r.uniform(1, 2));
      for (std::size_t k = 1; k <= n; ++k) CHECK(rubin_lattice(GLattice::free(g, n), k) == exterior_power(GLattice::free(g, n), k));
    }
  }
  SUBCASE("Z/2 acting trivially on Z, r = 1") {
    auto g = FiniteGroup::abelian({2});
    auto m = GLattice::trivial(g);
    auto e = exterior_power(m, 1), rl = rubin_lattice(m, 1);
    CHECK(e.rank() == 1);
    CHECK(rl == e);
  }
  SUBCASE("Z/2 acting trivially on Z^2, r = 2: index 2") {
    auto g = FiniteGroup::abelian({2});
    auto m = GLattice::trivial(g, 2);
    auto e = exterior_power(m, 2), rl = rubin_lattice(m, 2);
    CHECK(rl.contains(e));
    CHECK(quotient_invariants(rl, e) == std::vector<Int>{2});
  }
}

TEST_CASE("quotient invariants and containment") {
  RatMatrix z2 = identity_rat(2), twice = identity_rat(2);
  twice(0, 0) = 2;
  twice(1, 1) = 2;
  CHECK(quotient_invariants(z2, twice) == std::vector<Int>{2, 2});
  CHECK(quotient_invariants(z2, z2).empty());
  RatMatrix half = identity_rat(2);
  half(0, 0) = Rat(1, 2);
  try {
    quotient_invariants(z2, half);
    FAIL("expected a containment error");
  } catch (const ContainmentError& e) {
    CHECK(e.witness() == std::vector<Rat>{Rat(1, 2), Rat(0)});
  }
}

TEST_CASE("G-lattices must be G-stable") {
  auto g = FiniteGroup::abelian({2});
  auto reg = GLattice::regular(g);
  RatMatrix gen(0, 2);
  gen.append_row({Rat(1), Rat(0)});
  CHECK_THROWS_AS(GLattice::make(g, reg.ambient_actions(), gen), InputError);
  CHECK(reg.sublattice(gen) == reg);
}

TEST_CASE("annihilation of finite modules") {
  auto g = FiniteGroup::abelian({2});
  IntMatrix one = identity_int(1);
  FiniteGModule triv(g, {Int(2)}, {{1, one}});
  const QG c = qg_basis(g, 1), e = qg_one(g);
  CHECK(annihilates(e - c, triv));
  CHECK(annihilates(e.scaled(Rat(2)), triv));
  CHECK_FALSE(annihilates(e, triv));
  CHECK(annihilates(e, FiniteGModule::trivial(g)));
  IntMatrix minus(1, 1);
  minus(0, 0) = -1;
  FiniteGModule z3(g, {Int(3)}, {{1, minus}});
  CHECK(annihilates(e + c, z3));
  CHECK_FALSE(annihilates(e - c, z3));
  CHECK(z3.order() == 3);
  CHECK_THROWS_AS(FiniteGModule(g, {Int(2)}, {{1, IntMatrix(2, 2)}}), InputError);
}
