#include "cyclostark/weilstark.hpp"

#include <algorithm>
#include <fstream>

#include "cyclostark/linalg.hpp"

namespace cyclostark {

nlohmann::json qg_json(const QG& x) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : x.coeffs()) out.push_back(to_string(c));
  return out;
}

nlohmann::json ideal_json(const IdealLattice& l) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t r = 0; r < l.basis().rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t c = 0; c < l.basis().cols(); ++c) row.push_back(to_string(l.basis()(r, c)));
    out.push_back(row);
  }
  return out;
}

nlohmann::json rats_json(const std::vector<Rat>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

nlohmann::json ints_json(const std::vector<Int>& v) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& q : v) out.push_back(q.get_str());
  return out;
}

namespace {

// Sum_g x_g A_g for a family of action matrices.
RatMatrix operator_of(const QG& x, const std::vector<RatMatrix>& action) {
  const std::size_t d = action.at(0).rows();
  RatMatrix out(d, d, Rat(0));
  for (std::size_t g = 0; g < action.size(); ++g) {
    if (x[g] == 0) continue;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (action[g](i, j) != 0) out(i, j) += x[g] * action[g](i, j);
  }
  return out;
}

// Sublattice of vectors fixed by the projector E.
RatMatrix fixed_sublattice(const RatMatrix& basis, const RatMatrix& e) {
  const std::size_t d = e.rows();
  RatMatrix em = e;
  for (std::size_t i = 0; i < d; ++i) em(i, i) -= 1;
  RatMatrix image = basis * em.transpose();
  IntMatrix k = integer_left_kernel(image);
  if (k.rows() == 0) return RatMatrix(0, basis.cols());
  return lattice_span(to_rat(k) * basis);
}

long smallest_prime_coprime_to(const Int& n) {
  for (long q = 2;; ++q)
    if (is_prime(q) && !mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(q))) return q;
}

Int binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

void check_canonical(const SUnitBasis& b) {
  if (finite_primes(b.places()) != prime_factors(b.field()->conductor()))
    throw InputError("the cyclotomic element needs S = {inf} and the primes dividing the conductor");
}

FiniteGModule parse_module(const nlohmann::json& j, const FieldHandle& field) {
  std::vector<Int> inv;
  for (const auto& d : j.at("invariants")) inv.push_back(Int(d.get<long>()));
  const std::size_t k = inv.size();
  std::vector<std::pair<std::size_t, IntMatrix>> acts;
  for (const auto& [label, mat] : j.at("action").items()) {
    IntMatrix a(k, k);
    if (mat.size() != k) throw InputError("class group action for " + label + " has the wrong size");
    for (std::size_t r = 0; r < k; ++r) {
      if (mat[r].size() != k) throw InputError("class group action for " + label + " has the wrong size");
      for (std::size_t c = 0; c < k; ++c) a(r, c) = mat[r][c].get<long>();
    }
    acts.emplace_back(field->group()->element_of_residue(std::stol(label)), a);
  }
  if (acts.empty() && field->group()->order() > 1) throw InputError("class group fixture has no Galois action");
  return FiniteGModule(field->group(), inv, acts);
}

std::vector<long> parse_places(const nlohmann::json& j) {
  std::vector<long> primes;
  bool inf = false;
  for (const auto& e : j) {
    if (e.is_string() && e.get<std::string>() == "inf")
      inf = true;
    else
      primes.push_back(e.is_string() ? std::stol(e.get<std::string>()) : e.get<long>());
  }
  if (!inf) throw InputError("place set must contain inf");
  return primes;
}

}  // namespace

Cyclotomic norm_one_minus_zeta(const RealAbelianField& field) {
  const auto& f = field.cyclotomic();
  Cyclotomic n = Cyclotomic::one(f);
  for (long a : field.group()->subgroup_residues()) n *= Cyclotomic::one(f) - Cyclotomic::zeta(f, a);
  return n;
}

WeilStarkElement cyclotomic_element(const BasisHandle& basis, unsigned precision) {
  check_canonical(*basis);
  if (!basis->t().empty()) throw InputError("the cyclotomic element is built over the S-unit basis (T empty)");
  const auto& field = *basis->field();
  WeilStarkElement w;
  w.basis = basis;
  try {
    w.epsilon = express_in_basis({{norm_one_minus_zeta(field), Rat(1, 2)}}, basis, {precision, 2});
  } catch (const InputError& e) {
    throw InputError(std::string("fixture inconsistency: ") + e.what());
  }
  w.e_pi = compute_e_pi(field, basis->places());
  return w;
}

QG compute_e_pi(const RealAbelianField& field, const std::vector<Place>& s) {
  const auto& g = field.group();
  auto chars = characters_of(g);
  auto f = CyclotomicField::get(g->exponent());
  std::vector<Cyclotomic> vals;
  for (const auto& chi : chars)
    vals.push_back(vanishing_order(chi, s) == 1 ? Cyclotomic::one(f) : Cyclotomic::zero(f));
  return from_character_values(g, chars, vals);
}

QG gamma_T(const RealAbelianField& field, const std::vector<long>& t, const std::vector<long>& s_primes) {
  const auto& g = field.group();
  QG out = qg_one(g);
  for (long v : t) {
    if (!is_prime(v)) throw InputError(std::to_string(v) + " is not prime");
    if (field.conductor() % v == 0) throw InputError("T contains " + std::to_string(v) + ", which ramifies in L");
    if (std::count(s_primes.begin(), s_primes.end(), v)) throw InputError("T meets S at " + std::to_string(v));
    QG factor = qg_one(g);
    factor[g->inv(g->element_of_residue(v))] -= v;
    out = out * factor;
  }
  return out;
}

TModifiedElement t_modify(const WeilStarkElement& eps, const BasisHandle& t_basis, unsigned precision) {
  const auto& s_basis = eps.basis;
  if (t_basis->field() != s_basis->field()) throw InputError("T-basis lives over a different field");
  if (finite_primes(t_basis->places()) != finite_primes(s_basis->places())) throw InputError("T-basis has a different S");
  if (t_basis->t().empty()) throw InputError("T-basis has empty T");
  if (t_basis->rank() != s_basis->rank()) throw InputError("T-basis rank differs from the S-unit rank");
  TModifiedElement out;
  out.t_basis = t_basis;
  out.gamma = gamma_T(*s_basis->field(), t_basis->t(), finite_primes(s_basis->places()));
  const std::size_t n = s_basis->rank();
  out.change_of_basis = IntMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto e = express_in_basis({{t_basis->elements()[i], Rat(1)}}, s_basis, {precision, 1});
    for (std::size_t j = 0; j < n; ++j) out.change_of_basis(i, j) = e.exponents[j].get_num();
  }
  auto v = eps.epsilon.act(out.gamma).exponents;
  auto x = solve_left(to_rat(out.change_of_basis), v);
  if (!x) throw InputError("gamma_T * eps is not in the span of the T-basis");
  out.epsilon_t = {t_basis, *x};
  return out;
}

IdealLattice evaluation_ideal(const MultiplicativeElement& x, const HomLattice& dual) {
  const auto& g = dual.target.group();
  std::vector<QG> vals;
  for (std::size_t i = 0; i < dual.maps.size(); ++i) {
    QG v = evaluate_functional(dual, i, x.exponents);
    if (!v.is_zero()) vals.push_back(v);
  }
  if (vals.empty()) return IdealLattice::zero(g);
  return IdealLattice::generated_by(g, vals);
}

IdealLattice evaluation_ideal(const MultiplicativeElement& x) {
  GLattice u = x.basis->lattice();
  return evaluation_ideal(x, hom_lattice(u, GLattice::regular(u.group())));
}

SelmerFixture SelmerFixture::from_json(const nlohmann::json& j, const FieldHandle& field) {
  SelmerFixture s;
  try {
    const auto& fj = j.at("field");
    if (fj.at("conductor").get<long>() != field->conductor() ||
        fj.at("subgroup_gens").get<std::vector<long>>() != field->subgroup_generators())
      throw InputError("Selmer fixture is for a different field");
    s.field = field;
    s.s = make_places(*field, parse_places(j.at("S")));
    s.s_prime = make_places(*field, parse_places(j.at("Sprime")));
    for (const auto& e : j.at("T")) s.t.push_back(e.get<long>());
    std::sort(s.t.begin(), s.t.end());
    if (j.contains("cl_ST") && !j["cl_ST"].is_null()) s.cl_st = parse_module(j["cl_ST"], field);
    if (j.contains("cl_SprimeT") && !j["cl_SprimeT"].is_null()) s.cl_sprime_t = parse_module(j["cl_SprimeT"], field);
    if (j.contains("selmer_presentation") && !j["selmer_presentation"].is_null()) {
      const auto& pm = j["selmer_presentation"];
      const std::size_t d = pm.size(), dp = d ? pm[0].size() : 0;
      if (d < dp || dp == 0) throw InputError("Selmer presentation must have at least as many rows as columns");
      QGMatrix mat = qg_matrix(field->group(), d, dp);
      for (std::size_t r = 0; r < d; ++r) {
        if (pm[r].size() != dp) throw InputError("ragged Selmer presentation");
        for (std::size_t c = 0; c < dp; ++c) {
          std::vector<std::pair<long, Rat>> terms;
          for (const auto& [res, val] : pm[r][c].items()) terms.emplace_back(std::stol(res), parse_rational(val.get<std::string>()));
          mat(r, c) = qg_from_residues(field->group(), terms);
        }
      }
      s.presentation = Presentation{field->group(), mat};
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed Selmer fixture: ") + e.what());
  }
  return s;
}

SelmerFixture SelmerFixture::load(const std::string& path, const FieldHandle& field) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open fixture " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("cannot parse fixture " + path + ": " + e.what());
  }
  try {
    return from_json(j, field);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::skipped:
      return "skipped";
  }
  return "fail";
}

nlohmann::json Report::to_json() const {
  return {{"check", check}, {"subject", subject}, {"status", cyclostark::to_string(status)}, {"detail", detail}};
}

WeilStarkElement corrupted(const WeilStarkElement& eps) {
  WeilStarkElement w = eps;
  if (!w.epsilon.exponents.empty()) w.epsilon.exponents[0] += 1;
  return w;
}

Report verify_regulator(const WeilStarkElement& eps, unsigned precision, unsigned tolerance_digits) {
  if (precision < kMinPrecision) throw InputError("precision must be at least " + std::to_string(kMinPrecision) + " digits");
  if (2 * tolerance_digits > precision) throw InputError("tolerance exponent must not exceed precision/2");
  const auto& field = eps.basis->field();
  Report r{"regulator", field->key()};
  RG lead = equivariant_leading_term(*field, precision);
  PrecisionScope scope(precision);
  YXData yx = build_YX(field, eps.basis->places());
  std::vector<Rat> w(yx.w_inf.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = yx.w_inf[i] - yx.w_0[i];
  const std::size_t dim = w.size();
  std::vector<Real> rhs(dim, Real(0));
  for (std::size_t g = 0; g < field->group()->order(); ++g) {
    auto gw = yx.y.act(g, w);
    for (std::size_t i = 0; i < dim; ++i)
      if (gw[i] != 0) rhs[i] += lead[g] * Real(gw[i].get_num().get_si());
  }
  auto residual = [&](int sign) {
    auto lhs = dirichlet_regulator(eps.epsilon.scaled(Rat(sign)));
    Real worst = 0;
    for (std::size_t i = 0; i < dim; ++i) worst = std::max<Real>(worst, boost::multiprecision::abs(lhs[i] - rhs[i]));
    return std::make_pair(worst, lhs);
  };
  auto [res, lhs] = residual(kRegulatorSign);
  auto [other, unused] = residual(-kRegulatorSign);
  (void)unused;
  const Real tol = tolerance_from_digits(tolerance_digits);
  r.status = res < tol ? Status::pass : Status::fail;
  nlohmann::json lj = nlohmann::json::array(), rj = nlohmann::json::array();
  for (std::size_t i = 0; i < dim; ++i) {
    lj.push_back(to_decimal(lhs[i], 25));
    rj.push_back(to_decimal(rhs[i], 25));
  }
  r.detail = {{"sign", kRegulatorSign},
              {"epsilon", rats_json(eps.epsilon.exponents)},
              {"regulator", lj},
              {"leading_term_side", rj},
              {"residual", to_decimal(res, 6)},
              {"opposite_sign_residual", to_decimal(other, 6)},
              {"tolerance", "1e-" + std::to_string(tolerance_digits)},
              {"precision", precision}};
  return r;
}

namespace {

struct IntegralityData {
  bool member = false;
  bool integral_exponents = false;
  bool e_pi_fixed = false;
  std::vector<Int> index;
  Int index_order = 1;
  bool finite_index = true;
};

IntegralityData integrality_data(const TModifiedElement& et) {
  IntegralityData d;
  const auto& x = et.epsilon_t;
  GLattice u = et.t_basis->lattice();
  WedgeCoordinates w(u, 1);
  GLattice rub = rubin_lattice(w);
  auto v = w.wedge({x.exponents});
  const auto action = w.action();
  d.member = true;
  for (const auto& a : action) d.member = d.member && rub.contains(times_col(a, v));
  d.integral_exponents = is_integral(x.exponents);
  const auto& g = u.group();
  QG e_pi = compute_e_pi(*et.t_basis->field(), et.t_basis->places());
  d.e_pi_fixed = x.act(e_pi).exponents == x.exponents;
  if (!d.member) return d;
  RatMatrix fixed = fixed_sublattice(rub.basis(), operator_of(e_pi, action));
  RatMatrix gens(0, v.size());
  gens.append_row(v);
  GLattice wl = GLattice::spanned(g, action, gens);
  try {
    d.index = quotient_invariants(fixed, wl.basis());
    for (const auto& q : d.index) d.index_order *= q;
  } catch (const InputError&) {
    d.finite_index = false;
  }
  return d;
}

}  // namespace

Report verify_integrality(const TModifiedElement& et) {
  const auto& field = et.t_basis->field();
  Report r{"integrality", field->key() + "_T" + std::to_string(et.t_basis->t().front())};
  auto d = integrality_data(et);
  // Both routes must agree: membership in the Rubin lattice and integrality
  // of the exponents over the T-basis (for r = 1 these coincide).
  r.status = d.member && d.integral_exponents && d.e_pi_fixed && d.finite_index ? Status::pass : Status::fail;
  r.detail = {{"gamma_T", qg_json(et.gamma)},
              {"epsilon_T", rats_json(et.epsilon_t.exponents)},
              {"rubin_membership", d.member},
              {"integral_exponents", d.integral_exponents},
              {"e_pi_fixed", d.e_pi_fixed},
              {"finite_index", d.finite_index},
              {"index_invariants", ints_json(d.index)},
              {"index", d.index_order.get_str()}};
  return r;
}

TModifiedElement scaled_off_lattice(const TModifiedElement& et) {
  long q = smallest_prime_coprime_to(integrality_data(et).index_order);
  TModifiedElement scaled = et;
  scaled.epsilon_t = et.epsilon_t.scaled(Rat(1, q));
  return scaled;
}

Report integrality_negative_control(const TModifiedElement& et) {
  const auto& field = et.t_basis->field();
  Report r{"integrality_negative_control", field->key() + "_T" + std::to_string(et.t_basis->t().front())};
  auto d = integrality_data(et);
  long q = smallest_prime_coprime_to(d.index_order);
  TModifiedElement scaled = et;
  scaled.epsilon_t = et.epsilon_t.scaled(Rat(1, q));
  auto ds = integrality_data(scaled);
  r.status = ds.member ? Status::fail : Status::pass;
  r.detail = {{"divisor", q}, {"scaled_membership", ds.member}, {"original_index", d.index_order.get_str()}};
  return r;
}

Report verify_fitting_equality(const TModifiedElement& et, const SelmerFixture& selmer) {
  const auto& field = et.t_basis->field();
  Report r{"fitting", field->key() + "_T" + std::to_string(et.t_basis->t().front())};
  if (selmer.field != field) throw InputError("Selmer fixture is for a different field");
  if (finite_primes(selmer.s) != finite_primes(et.t_basis->places()) || selmer.t != et.t_basis->t())
    throw InputError("Selmer fixture has different S or T");
  if (!field->group()->is_abelian()) throw UnsupportedError("Fitting equality needs an abelian group");
  if (!selmer.cl_st) throw InputError("Selmer fixture lacks Cl^T_S");
  const bool trivial_cl = selmer.cl_st->is_trivial();
  if (!trivial_cl && !selmer.presentation) {
    r.status = Status::skipped;
    r.detail = {{"reason", "nontrivial Cl^T_S without a certified Selmer presentation"},
                {"cl_ST", ints_json(selmer.cl_st->invariants())}};
    return r;
  }
  Presentation x_pres = presentation_of(build_YX(field, selmer.s).x);
  Presentation pres = selmer.presentation ? *selmer.presentation : x_pres;
  bool presentation_agrees = true;
  if (selmer.presentation && trivial_cl) {
    const long top = static_cast<long>(std::max(pres.generators(), x_pres.generators()));
    for (long a = 0; a <= top; ++a)
      presentation_agrees = presentation_agrees && classical_fitting_ideal(pres, a) == classical_fitting_ideal(x_pres, a);
  }
  IdealLattice fit0 = classical_fitting_ideal(pres, 0);
  IdealLattice fit1 = classical_fitting_ideal(pres, 1);
  IdealLattice ev = evaluation_ideal(et.epsilon_t);
  const bool eq = ev == fit1;
  const bool mono = fit1.contains(fit0);
  r.status = eq && mono && presentation_agrees ? Status::pass : Status::fail;
  r.detail = {{"evaluation_ideal", ideal_json(ev)},
              {"fit1", ideal_json(fit1)},
              {"equal", eq},
              {"evaluation_in_fit1", fit1.contains(ev)},
              {"fit1_in_evaluation", ev.contains(fit1)},
              {"fit0_in_fit1", mono},
              {"presentation", selmer.presentation ? "fixture" : "X_{L,S}"},
              {"presentation_agrees", presentation_agrees}};
  return r;
}

Report verify_annihilation(const TModifiedElement& et, const SelmerFixture& selmer) {
  const auto& field = et.t_basis->field();
  Report r{"annihilation", field->key() + "_T" + std::to_string(et.t_basis->t().front())};
  if (selmer.field != field) throw InputError("Selmer fixture is for a different field");
  if (!selmer.cl_sprime_t) throw InputError("Selmer fixture lacks Cl^T_S' with Galois action");
  const auto& cl = *selmer.cl_sprime_t;
  IdealLattice ev = evaluation_ideal(et.epsilon_t);
  bool integral = true, kills = true, sharp_kills = true;
  nlohmann::json witness = nullptr;
  for (const auto& x : ev.elements()) {
    if (!is_integral(x)) {
      integral = false;
      if (witness.is_null()) witness = qg_json(x);
      continue;
    }
    if (!annihilates(x, cl)) {
      kills = false;
      if (witness.is_null()) witness = qg_json(x);
    }
    sharp_kills = sharp_kills && annihilates(x.sharp(), cl);
  }
  QG order = qg_one(field->group()).scaled(Rat(cl.order()));
  r.status = integral && kills ? Status::pass : Status::fail;
  r.detail = {{"cl_SprimeT", ints_json(cl.invariants())},
              {"Sprime", [&] {
                 nlohmann::json a = nlohmann::json::array();
                 for (const auto& v : selmer.s_prime) a.push_back(v.label());
                 return a;
               }()},
              {"generators", ev.rank()},
              {"integral", integral},
              {"annihilates", kills},
              {"sharp_annihilates", sharp_kills},
              {"order_annihilates", annihilates(order, cl)},
              {"witness", witness}};
  return r;
}

Report fe_dimension_check(const BasisHandle& basis, long a) {
  if (a < 0) throw InputError("exterior power index must be nonnegative");
  const auto& field = basis->field();
  Report r{"dimensions", field->key() + "_a" + std::to_string(a)};
  GLattice u = basis->lattice();
  WedgeCoordinates w(u, static_cast<std::size_t>(a));
  GLattice rub = rubin_lattice(w);
  const auto& g = field->group();
  auto chars = characters_of(g);
  const auto action = w.action();
  bool ok = true;
  nlohmann::json rows = nlohmann::json::array();
  std::vector<bool> done(chars.size(), false);
  for (std::size_t i = 0; i < chars.size(); ++i) {
    if (done[i]) continue;
    auto orbit = galois_orbit(chars[i]);
    for (std::size_t k = 0; k < chars.size(); ++k)
      if (std::find(orbit.begin(), orbit.end(), chars[k]) != orbit.end()) done[k] = true;
    std::size_t dim = 0;
    if (rub.rank() > 0) {
      RatMatrix f = operator_of(rational_idempotent(chars[i]), action);
      dim = rank(rub.basis() * f.transpose());
    }
    const std::size_t per_char = dim / orbit.size();
    const long rs = vanishing_order(chars[i], basis->places());
    const Int expected = binomial(rs, a);
    const bool match = dim % orbit.size() == 0 && Int(static_cast<long>(per_char)) == expected;
    ok = ok && match;
    rows.push_back({{"character", chars[i].label()},
                    {"orbit_size", orbit.size()},
                    {"r_S", rs},
                    {"dimension", per_char},
                    {"expected", expected.get_str()},
                    {"match", match}});
  }
  r.status = ok ? Status::pass : Status::fail;
  r.detail = {{"a", a}, {"rubin_rank", rub.rank()}, {"characters", rows}};
  return r;
}

}  // namespace cyclostark
