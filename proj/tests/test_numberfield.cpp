#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "generators.hpp"

#include <filesystem>
#include <fstream>

#include "cyclostark/fixtures.hpp"
#include "cyclostark/numberfield.hpp"

using namespace cyclostark;

namespace {

BasisHandle units(const std::string& name) { return SUnitBasis::load(default_fixture_dir() + "/" + name); }

nlohmann::json raw(const std::string& name) {
  std::ifstream in(default_fixture_dir() + "/" + name);
  nlohmann::json j;
  in >> j;
  return j;
}

std::string rejection(const nlohmann::json& j) {
  try {
    SUnitBasis::from_json(j);
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

bool close(const Real& a, const Real& b, unsigned digits) { return abs(a - b) < tolerance_from_digits(digits); }

}  // namespace

TEST_CASE("field validation") {
  CHECK_THROWS_AS(RealAbelianField::make(0, {}), InputError);
  CHECK_THROWS_AS(RealAbelianField::make(2, {}), InputError);
  CHECK_THROWS_AS(RealAbelianField::make(401, {400}), UnsupportedError);
  CHECK_THROWS_AS(RealAbelianField::make(12, {6}), InputError);
  CHECK_THROWS_AS(RealAbelianField::make(13, {3}), InputError);  // -1 not in <3> mod 13
  CHECK_THROWS_AS(RealAbelianField::make(10, {9}), InputError);  // Q(sqrt 5) has conductor 5
  CHECK_THROWS_AS(RealAbelianField::make(8, {7, 3}), InputError);  // fixed field is Q
  auto f = RealAbelianField::make(13, {12});
  CHECK(f->degree() == 6);
  CHECK(f->key() == "m13_H12");
  CHECK(RealAbelianField::make(13, {12}) == f);
}

TEST_CASE("decomposition groups in Q(sqrt 5)") {
  auto f = RealAbelianField::make(5, {4});
  CHECK(decomposition_group(*f, 11).size() == 1);
  CHECK(decomposition_group(*f, 3).size() == 2);
  CHECK(decomposition_group(*f, 5).size() == 2);
  CHECK(decomposition_group(*f, 29).size() == 1);
  CHECK_THROWS_AS(decomposition_group(*f, 9), InputError);
}

TEST_CASE("decomposition groups: the residue of p generates G_v for p prime to m") {
  for (const auto& ff : load_fixture_index(default_fixture_dir())) {
    auto f = RealAbelianField::make(ff.conductor, ff.subgroup_gens);
    const auto& g = f->group();
    for (long p : {3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L}) {
      auto places = make_places(*f, {p});
      const auto& v = places.back();
      CHECK(v.decomposition.size() * v.cosets.size() == f->degree());
      if (f->conductor() % p == 0) continue;
      auto frob = g->element_of_residue(p % f->conductor());
      CHECK(v.decomposition == g->subgroup({frob}));
    }
  }
}

TEST_CASE("Y and X ranks") {
  for (const auto& ff : load_fixture_index(default_fixture_dir())) {
    auto f = RealAbelianField::make(ff.conductor, ff.subgroup_gens);
    auto s = canonical_places(*f);
    auto yx = build_YX(f, s);
    CHECK(yx.y.rank() == places_of_L(s));
    CHECK(yx.x.rank() == places_of_L(s) - 1);
    CHECK(yx.x.contains(yx.w_inf) == false);
    std::vector<Rat> diff(yx.w_inf.size());
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = yx.w_inf[i] - yx.w_0[i];
    CHECK(yx.x.contains(diff));
  }
}

TEST_CASE("|1 - zeta_5| = 2 sin(pi/5)") {
  PrecisionScope scope(40);
  auto q = CyclotomicField::get(5);
  Cyclotomic x = Cyclotomic::one(q) - Cyclotomic::zeta(q, 1);
  CHECK(close(abs_complex(embed(x, 1, 40)), Real("1.1755705045849463"), 15));
  CHECK(close(abs_complex(embed(x, 2, 40)), Real("1.9021130325903071"), 15));
}

TEST_CASE("product formula and Galois equivariance of the log embedding") {
  for (const auto& ff : load_fixture_index(default_fixture_dir())) {
    auto b = units(std::filesystem::path(ff.units).filename().string());
    PrecisionScope scope(kDefaultPrecision);
    const auto& g = b->field()->group();
    for (const auto& v : b->log_vectors()) {
      Real s = 0;
      for (const auto& c : v) s += c;
      CHECK(close(s, Real(0), 40));
    }
    gen::Rng r(41);
    for (std::size_t it = 0; it < 4; ++it) {
      MultiplicativeElement u{b, {}};
      for (std::size_t i = 0; i < b->rank(); ++i) u.exponents.push_back(Rat(r.uniform(-3, 3)));
      auto base = dirichlet_regulator(u);
      for (std::size_t a = 0; a < g->order(); ++a) {
        auto moved = dirichlet_regulator(u.act(a));
        for (std::size_t h = 0; h < g->order(); ++h) CHECK(close(moved[h], base[g->mul(g->inv(a), h)], 40));
      }
    }
  }
}

TEST_CASE("expressing elements in a basis") {
  auto b = units("field_m5_H4_units.json");
  const auto& e = b->elements();
  auto x = express_in_basis({{e[0], Rat(2)}, {e[1], Rat(-1)}}, b);
  CHECK(x.exponents == std::vector<Rat>{Rat(2), Rat(-1)});
  auto y = express_in_basis({{-e[1], Rat(1)}}, b);
  CHECK(y.exponents == std::vector<Rat>{Rat(0), Rat(1)});
  auto half = express_in_basis({{e[0] * e[0] * e[1], Rat(1, 2)}}, b);
  CHECK(half.exponents == std::vector<Rat>{Rat(1), Rat(1, 2)});
  auto q = b->field()->cyclotomic();
  CHECK_THROWS_AS(express_in_basis({{Cyclotomic(q, Rat(2)), Rat(1)}}, b), InputError);
  CHECK_THROWS_AS(express_in_basis({{Cyclotomic::zeta(q, 1), Rat(1)}}, b), InputError);
}

TEST_CASE("corrupted fixtures are rejected by name") {
  auto j = raw("field_m5_H4_units.json");
  CHECK(rejection(j).empty());
  SUBCASE("wrong action matrix") {
    j["action"]["2"]["matrix"][0][0] = 1;
    CHECK(rejection(j).find("'galois_action'") != std::string::npos);
  }
  SUBCASE("non-unit basis element") {
    j["basis"][0] = {"2/1", "0/1", "0/1", "0/1"};
    CHECK(rejection(j).find("fixture invariant") != std::string::npos);
  }
  SUBCASE("wrong rank") {
    j["basis"].erase(1);
    CHECK(rejection(j).find("'rank'") != std::string::npos);
  }
  SUBCASE("place that is not prime") {
    j["S"] = {"inf", 6};
    CHECK(rejection(j).find("'schema'") != std::string::npos);
  }
  SUBCASE("T not congruent to 1") {
    auto t = raw("field_m5_H4_T3_units.json");
    CHECK(rejection(t).empty());
    t["basis"][0] = j["basis"][0];
    CHECK_FALSE(rejection(t).empty());
  }
}
