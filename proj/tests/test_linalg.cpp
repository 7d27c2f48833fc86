#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "generators.hpp"

#include <functional>

#include "cyclostark/linalg.hpp"

using namespace cyclostark;

namespace {

RatMatrix rm(std::vector<std::vector<long>> rows) {
  RatMatrix m(0, rows.empty() ? 0 : rows[0].size());
  for (const auto& r : rows) {
    std::vector<Rat> v;
    for (long x : r) v.push_back(Rat(x));
    m.append_row(v);
  }
  return m;
}

Int gcd_int(Int a, Int b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

// gcd of all k x k minors, by brute force.
Int determinantal_divisor(const RatMatrix& m, std::size_t k) {
  Int g = 0;
  const std::size_t r = m.rows(), c = m.cols();
  std::vector<std::size_t> rs(k), cs(k);
  std::function<void(std::size_t, std::size_t, std::vector<std::size_t>&, std::size_t, std::function<void()>)> choose =
      [&](std::size_t start, std::size_t n, std::vector<std::size_t>& out, std::size_t depth, std::function<void()> f) {
        if (depth == out.size()) {
          f();
          return;
        }
        for (std::size_t i = start; i < n; ++i) {
          out[depth] = i;
          choose(i + 1, n, out, depth + 1, f);
        }
      };
  choose(0, r, rs, 0, [&] {
    choose(0, c, cs, 0, [&] {
      RatMatrix sub(k, k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(rs[i], cs[j]);
      g = gcd_int(g, abs(determinant(sub).get_num()));
    });
  });
  return g;
}

}  // namespace

TEST_CASE("hnf of the identity is the identity") {
  CHECK(hnf(identity_rat(3)) == identity_rat(3));
}

TEST_CASE("snf of diag(2,3) is (1,6)") {
  auto s = snf(to_int(rm({{2, 0}, {0, 3}})));
  REQUIRE(s.diagonal.size() == 2);
  CHECK(s.diagonal[0] == 1);
  CHECK(s.diagonal[1] == 6);
}

TEST_CASE("snf of 2x2 matrices agrees with the gcd/determinant oracle") {
  gen::Rng r(11);
  for (int it = 0; it < 300; ++it) {
    RatMatrix m = gen::random_int_matrix(r, 2, 2, 9);
    auto s = snf(to_int(m));
    Int g = 0;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) g = gcd_int(g, abs(m(i, j).get_num()));
    Int det = abs(determinant(m).get_num());
    CHECK(s.diagonal[0] == g);
    CHECK(s.diagonal[0] * s.diagonal[1] == det);
  }
}

TEST_CASE("snf transforms and determinantal divisors on random 3x4 matrices") {
  gen::Rng r(12);
  for (int it = 0; it < 80; ++it) {
    RatMatrix m = gen::random_int_matrix(r, 3, 4, 6);
    auto s = snf(to_int(m));
    IntMatrix d = s.left * to_int(m) * s.right;
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j) CHECK(d(i, j) == (i == j ? s.diagonal[i] : Int(0)));
    CHECK(abs(determinant(to_rat(s.left))) == 1);
    CHECK(abs(determinant(to_rat(s.right))) == 1);
    Int prod = 1;
    for (std::size_t k = 1; k <= 3; ++k) {
      prod *= s.diagonal[k - 1];
      CHECK(prod == determinantal_divisor(m, k));
      if (k < 3 && s.diagonal[k] != 0) CHECK(mpz_divisible_p(s.diagonal[k].get_mpz_t(), s.diagonal[k - 1].get_mpz_t()));
    }
  }
}

TEST_CASE("hnf is canonical under unimodular remixing and idempotent") {
  gen::Rng r(13);
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = static_cast<std::size_t>(r.uniform(1, 4));
    RatMatrix b = gen::random_int_matrix(r, n, n + 1, 7);
    if (rank(b) < n) continue;
    RatMatrix h = hnf(b);
    CHECK(hnf(gen::unimodular(r, n, 8) * b) == h);
    CHECK(hnf(h) == h);
    for (std::size_t i = 0; i < h.rows(); ++i) {
      std::size_t p = 0;
      while (h(i, p) == 0) ++p;
      CHECK(h(i, p) > 0);
      for (std::size_t k = 0; k < i; ++k) CHECK((h(k, p) >= 0 && h(k, p) < h(i, p)));
    }
  }
}

TEST_CASE("hnf rejects dependent rows and names the row") {
  try {
    hnf(rm({{1, 2}, {2, 4}}));
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("row 1") != std::string::npos);
  }
}

TEST_CASE("rational lattices keep their denominators") {
  RatMatrix m(0, 2);
  m.append_row({Rat(1, 2), Rat(0)});
  m.append_row({Rat(0), Rat(1, 3)});
  m.append_row({Rat(1, 2), Rat(1, 3)});
  RatMatrix h = lattice_span(m);
  CHECK(h.rows() == 2);
  CHECK(h(0, 0) == Rat(1, 2));
  CHECK(h(1, 1) == Rat(1, 3));
}

TEST_CASE("saturation") {
  CHECK(saturate(to_int(rm({{2, 0}, {0, 2}}))) == identity_int(2));
  CHECK(saturate(to_int(rm({{2, 4}}))) == to_int(rm({{1, 2}})));
  gen::Rng r(14);
  for (int it = 0; it < 60; ++it) {
    RatMatrix b = gen::random_int_matrix(r, 2, 4, 5);
    if (rank(b) < 2) continue;
    IntMatrix s = saturate(to_int(b));
    CHECK(s.rows() == 2);
    // b lies in span(s) integrally, and span(s) is saturated: every rational
    // combination of s with integral result has integral coefficients.
    RowSpaceSolver sol(to_rat(s));
    for (std::size_t i = 0; i < b.rows(); ++i) CHECK(is_integral(*sol.solve(b.row(i))));
    CHECK(snf(s).diagonal == std::vector<Int>{1, 1});
  }
}

TEST_CASE("integer left kernel") {
  gen::Rng r(15);
  for (int it = 0; it < 60; ++it) {
    RatMatrix a = gen::random_int_matrix(r, 5, 3, 4);
    IntMatrix k = integer_left_kernel(a);
    CHECK(k.rows() == 5 - rank(a));
    RatMatrix z = to_rat(k) * a;
    for (std::size_t i = 0; i < z.rows(); ++i)
      for (std::size_t j = 0; j < z.cols(); ++j) CHECK(z(i, j) == 0);
    if (k.rows() > 0) CHECK(saturate(k) == k);
  }
}

TEST_CASE("solve_left and membership") {
  RatMatrix b = rm({{1, 1, 0}, {0, 2, 1}});
  auto x = solve_left(b, {Rat(3), Rat(7), Rat(2)});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == 3);
  CHECK((*x)[1] == 2);
  CHECK_FALSE(solve_left(b, {Rat(1), Rat(0), Rat(0)}).has_value());
}

TEST_CASE("rationals parse strictly and print as p/q") {
  CHECK(parse_rational("3/6") == Rat(1, 2));
  CHECK(parse_rational("-4") == Rat(-4));
  CHECK(to_string(Rat(2)) == "2/1");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("1.5"), InputError);
  CHECK_THROWS_AS(parse_rational(""), InputError);
}
