// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any
// criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "cyclostark/fixtures.hpp"
#include "cyclostark/weilstark.hpp"
#include "generators.hpp"

using namespace cyclostark;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) note << "first failure: " << what << "; ";
      ok = false;
    }
  }
};

int failures = 0;

void criterion(const std::string& name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.note << "exception: " << e.what() << "; ";
  }
  o.note.precision(2);
  o.note << std::fixed << seconds_since(t0) << " s";
  if (!o.ok) ++failures;
  std::cout << (o.ok ? "PASS " : "FAIL ") << name << " (" << o.note.str() << ")" << std::endl;
}

struct Field {
  FieldFixtures ff;
  BasisHandle basis;
  WeilStarkElement eps;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> all = [] {
    std::vector<Field> v;
    for (const auto& ff : load_fixture_index(default_fixture_dir())) {
      auto b = SUnitBasis::load(ff.units);
      v.push_back({ff, b, cyclotomic_element(b)});
    }
    return v;
  }();
  return all;
}

const Field* by_conductor(long m) {
  for (const auto& f : fields())
    if (f.ff.conductor == m) return &f;
  return nullptr;
}

struct TCase {
  const Field* field;
  std::vector<long> t;
  TModifiedElement et;
  SelmerFixture selmer;
};

const std::vector<TCase>& t_cases() {
  static const std::vector<TCase> all = [] {
    std::vector<TCase> v;
    for (const auto& f : fields())
      for (const auto& [t, path] : f.ff.t_units)
        v.push_back({&f, t, t_modify(f.eps, SUnitBasis::load(path)), SelmerFixture::load(f.ff.selmer.at(t), f.basis->field())});
    return v;
  }();
  return all;
}

std::string subject(const TCase& c) { return c.field->ff.key + "_T" + std::to_string(c.t.front()); }

Cyclotomic exact_product(const BasisHandle& b, const std::vector<Rat>& k) {
  Cyclotomic x = Cyclotomic::one(b->field()->cyclotomic());
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i].get_den() != 1) throw std::logic_error("non-integral exponent");
    const long e = k[i].get_num().get_si();
    x *= e >= 0 ? b->elements()[i].pow(e) : b->elements()[i].inverse().pow(-e);
  }
  return x;
}

bool squares_to_norm(const Field& f) {
  std::vector<Rat> twice;
  for (const auto& x : f.eps.epsilon.exponents) twice.push_back(2 * x);
  Cyclotomic sq = exact_product(f.basis, twice);
  Cyclotomic n = norm_one_minus_zeta(*f.basis->field());
  return sq == n || sq == -n;
}

void regulator_identity(Outcome& o) {
  const auto t0 = Clock::now();
  Real worst = 0;
  for (long m : {5L, 7L, 8L, 11L, 12L, 13L, 15L, 20L, 21L, 24L}) {
    const Field* f = by_conductor(m);
    o.require(f != nullptr, "no fixture for m=" + std::to_string(m));
    if (!f) continue;
    auto r = verify_regulator(f->eps, 60, 30);
    PrecisionScope scope(60);
    worst = std::max(worst, Real(r.detail["residual"].get<std::string>()));
    o.require(r.status == Status::pass, "m=" + std::to_string(m) + " residual " + r.detail["residual"].get<std::string>());
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 60, "runtime above 60 s");
  o.note << "10 conductors, 60 digits, tolerance 1e-30, max residual " << to_decimal(worst, 3) << ", sign " << kRegulatorSign << "; ";
}

void spot_values(Outcome& o) {
  PrecisionScope scope(60);
  auto f = RealAbelianField::make(5, {4});
  const Real tol = tolerance_from_digits(30);
  Real golden = log((Real(1) + sqrt(Real(5))) / 2);
  Real minus_half_log5 = -log(Real(5)) / 2;
  for (const auto& chi : characters_of(f->group())) {
    auto v = l_derivative_at_zero(chi, *f, 60);
    const Real& expect = chi.is_trivial() ? minus_half_log5 : golden;
    o.require(abs(v.re - expect) < tol && abs(v.im) < tol, "chi " + chi.label());
  }
  o.note << "m=5, tolerance 1e-30; ";
}

void exactness(Outcome& o) {
  const Field* m5 = by_conductor(5);
  const Field* m12 = by_conductor(12);
  o.require(m5 && m12, "missing m=5 or m=12 fixtures");
  if (!m5 || !m12) return;
  o.require(m5->eps.epsilon.exponents == std::vector<Rat>{Rat(-1, 2), Rat(1, 2)}, "m=5 exponents are not (-1/2, 1/2)");
  const auto q = m5->basis->field()->cyclotomic();
  const Cyclotomic phi = -(Cyclotomic::zeta(q, 2) + Cyclotomic::zeta(q, 3));
  const Cyclotomic sqrt5 = Cyclotomic::one(q) + (Cyclotomic::zeta(q, 1) + Cyclotomic::zeta(q, 4)) * Rat(2);
  o.require(sqrt5 * sqrt5 == Cyclotomic(q, Rat(5)), "sqrt 5");
  o.require(m5->basis->elements() == std::vector<Cyclotomic>{phi, sqrt5}, "m=5 basis is not (phi, sqrt 5)");
  // eps^2 = phi^{-1} sqrt 5 = (5 - sqrt 5)/2
  o.require(phi.inverse() * sqrt5 == (Cyclotomic(q, Rat(5)) - sqrt5) * Rat(1, 2), "phi^-1 sqrt5 != (5 - sqrt5)/2");
  o.require(norm_one_minus_zeta(*m5->basis->field()) == (Cyclotomic(q, Rat(5)) - sqrt5) * Rat(1, 2), "N(1 - zeta_5)");
  o.require(squares_to_norm(*m5), "m=5 certificate");
  o.require(squares_to_norm(*m12), "m=12 certificate");
  o.require(verify_expression({{norm_one_minus_zeta(*m12->basis->field()), Rat(1, 2)}}, m12->eps.epsilon, 60), "m=12 verify_expression");
  o.note << "m=12 eps = " << rats_json(m12->eps.epsilon.exponents).dump() << "; ";
}

void integrality(Outcome& o) {
  std::size_t n = 0;
  for (const auto& c : t_cases()) {
    auto r = verify_integrality(c.et);
    o.require(r.status == Status::pass, subject(c));
    o.require(r.detail["rubin_membership"] == r.detail["integral_exponents"], subject(c) + " routes disagree");
    o.require(integrality_negative_control(c.et).status == Status::pass, subject(c) + " negative control was accepted");
    o.require(verify_integrality(scaled_off_lattice(c.et)).status == Status::fail, subject(c) + " scaled element passed");
    ++n;
  }
  o.require(n > 0, "no (field, T) pairs");
  o.note << n << " (field, T) pairs, each with a negative control; ";
}

void fitting(Outcome& o) {
  std::size_t n = 0, skipped = 0;
  for (const auto& c : t_cases()) {
    if (!c.selmer.cl_st->is_trivial()) {
      ++skipped;
      continue;
    }
    auto r = verify_fitting_equality(c.et, c.selmer);
    o.require(r.status == Status::pass, subject(c));
    ++n;
  }
  o.require(n > 0, "no fixtures with trivial Cl^T_S");
  o.note << n << " fixtures with trivial Cl^T_S, " << skipped << " others out of scope; ";
}

void annihilation(Outcome& o) {
  std::size_t nontrivial = 0, n = 0;
  for (const auto& c : t_cases()) {
    auto r = verify_annihilation(c.et, c.selmer);
    o.require(r.status == Status::pass, subject(c));
    if (!c.selmer.cl_sprime_t->is_trivial()) ++nontrivial;
    ++n;
  }
  o.require(nontrivial >= 2, "fewer than two nontrivial ray class groups");
  o.note << n << " fixtures, " << nontrivial << " with nontrivial Cl^T_S'; ";
}

void dimensions(Outcome& o) {
  std::size_t n = 0;
  for (const auto& f : fields())
    for (long a = 0; a <= 2; ++a) {
      o.require(fe_dimension_check(f.basis, a).status == Status::pass, f.ff.key + " a=" + std::to_string(a));
      ++n;
    }
  o.note << n << " (field, a) pairs; ";
}

void algebra_properties(Outcome& o) {
  const auto t0 = Clock::now();
  gen::Rng r(2024);
  // Fitting ideals do not depend on the presentation.
  for (int it = 0; it < 60; ++it) {
    auto g = gen::small_abelian(r, 4);
    const std::size_t dp = static_cast<std::size_t>(r.uniform(1, 2));
    const std::size_t d = dp + static_cast<std::size_t>(r.uniform(0, 1));
    Presentation p{g, gen::random_matrix(r, g, d, dp, 2)};
    Presentation q{g, gen::remix_presentation(r, p.matrix, 4)};
    for (long a = 0; a <= static_cast<long>(dp); ++a)
      o.require(classical_fitting_ideal(p, a) == classical_fitting_ideal(q, a), "presentation independence");
  }
  // Minor construction against the classical oracle.
  int minors = 0;
  for (int it = 0; it < 200; ++it) {
    auto g = gen::small_abelian(r, 4);
    const std::size_t dp = static_cast<std::size_t>(r.uniform(1, 2));
    const std::size_t d = dp + static_cast<std::size_t>(r.uniform(0, 1));
    QGMatrix m = gen::random_matrix(r, g, d, dp, 2);
    const long a = r.uniform(0, static_cast<long>(dp) - 1);
    o.require(minor_fitting_invariant(m, a) == classical_fitting_ideal({g, m}, a), "minor construction");
    ++minors;
  }
  // Nrd multiplicativity, abelian and with shipped Wedderburn data.
  for (int it = 0; it < 60; ++it) {
    auto g = gen::small_abelian(r, 8);
    const std::size_t n = static_cast<std::size_t>(r.uniform(1, 3));
    QGMatrix a = gen::random_matrix(r, g, n, n, 2), b = gen::random_matrix(r, g, n, n, 2);
    o.require(reduced_norm(multiply(a, b)) == reduced_norm(a) * reduced_norm(b), "abelian Nrd");
  }
  for (const std::string name : {"S3", "D4"}) {
    auto wd = WedderburnData::load(default_data_dir() + "/wedderburn_" + name + ".json");
    for (int it = 0; it < 15; ++it) {
      const std::size_t n = static_cast<std::size_t>(r.uniform(1, 2));
      QGMatrix a = gen::random_matrix(r, wd.group(), n, n, 2), b = gen::random_matrix(r, wd.group(), n, n, 2);
      o.require(reduced_norm(multiply(a, b), &wd) == reduced_norm(a, &wd) * reduced_norm(b, &wd), name + " Nrd");
    }
  }
  // Idempotents.
  for (const auto& shape : gen::abelian_shapes()) {
    auto g = FiniteGroup::abelian(shape);
    auto f = CyclotomicField::get(g->exponent());
    std::vector<CG> es;
    for (const auto& chi : characters_of(g)) es.push_back(idempotent(chi));
    CG sum = CG::zero(g, Cyclotomic::zero(f));
    for (std::size_t i = 0; i < es.size(); ++i) {
      sum += es[i];
      for (std::size_t j = 0; j < es.size(); ++j)
        o.require((es[i] * es[j]).is_zero() == (i != j) && (i != j || es[i] * es[i] == es[i]), "idempotents");
    }
    o.require(sum == CG::scalar(g, Cyclotomic::one(f)), "completeness");
  }
  // HNF canonicity.
  for (int it = 0; it < 200; ++it) {
    const std::size_t n = static_cast<std::size_t>(r.uniform(1, 4));
    RatMatrix b = gen::random_int_matrix(r, n, n + 1, 7);
    if (rank(b) < n) continue;
    RatMatrix h = hnf(b);
    o.require(hnf(gen::unimodular(r, n, 8) * b) == h && hnf(h) == h, "hnf canonicity");
  }
  // Rubin lattice of a free module.
  for (const auto& shape : std::vector<std::vector<long>>{{}, {2}, {3}, {2, 2}}) {
    auto g = FiniteGroup::abelian(shape);
    for (std::size_t n = 1; n <= 2; ++n)
      for (std::size_t k = 0; k <= n; ++k)
        o.require(rubin_lattice(GLattice::free(g, n), k) == exterior_power(GLattice::free(g, n), k), "rubin = exterior");
  }
  const double elapsed = seconds_since(t0);
  o.require(elapsed < 120, "runtime above 120 s");
  o.note << minors << " minor-construction instances; ";
}

}  // namespace

int main() {
  criterion("regulator_identity", regulator_identity);
  criterion("l_value_spot_values", spot_values);
  criterion("weil_stark_exactness", exactness);
  criterion("integrality", integrality);
  criterion("fitting_equality", fitting);
  criterion("annihilation", annihilation);
  criterion("dimension_formula", dimensions);
  criterion("algebra_properties", algebra_properties);
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
