#include "cyclostark/numberfield.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <set>

#include "cyclostark/linalg.hpp"

namespace cyclostark {

namespace {

Real to_real(const Rat& q) { return Real(q.get_num().get_str()) / Real(q.get_den().get_str()); }

void check_precision(unsigned digits) {
  if (digits < kMinPrecision)
    throw InputError("precision must be at least " + std::to_string(kMinPrecision) + " digits");
}

InputError invariant_error(const std::string& name, const std::string& detail) {
  return InputError("fixture invariant '" + name + "' violated: " + detail);
}

}  // namespace

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::shared_ptr<const RealAbelianField> RealAbelianField::make(long m, std::vector<long> hgens) {
  if (m < 3) throw InputError("conductor must be at least 3, got " + std::to_string(m));
  if (m > 400) throw UnsupportedError("conductor above the desk-scale limit 400");
  for (long h : hgens)
    if (gcd_long(h, m) != 1) throw InputError("subgroup generator " + std::to_string(h) + " is not a unit mod " + std::to_string(m));
  // Shared per (m, H) so that every object over the same field sees the same group.
  static std::mutex mu;
  static std::map<std::pair<long, std::vector<long>>, FieldHandle> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(m, hgens);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  auto f = std::shared_ptr<RealAbelianField>(new RealAbelianField());
  f->m_ = m;
  f->hgens_ = hgens;
  f->group_ = FiniteGroup::units_quotient(m, hgens);
  f->qzeta_ = CyclotomicField::get(m);
  const auto& hres = f->group_->subgroup_residues();
  auto in_h = [&](long a) { return std::binary_search(hres.begin(), hres.end(), mod_long(a, m)); };
  if (!in_h(m - 1)) throw InputError("reality: -1 is not in the subgroup H, so the fixed field is not real");
  if (f->group_->order() == 1) throw InputError("fixed field is Q; a non-trivial extension is required");
  for (long q : prime_factors(m)) {
    long mp = m / q;
    bool kernel_in_h = true;
    for (long a = 1; a < m && kernel_in_h; ++a)
      if (gcd_long(a, m) == 1 && mod_long(a, mp) == 1 % mp && !in_h(a)) kernel_in_h = false;
    if (kernel_in_h)
      throw InputError("conductor: the fixed field is already contained in Q(zeta_" + std::to_string(mp) + ")");
  }
  cache[key] = f;
  return f;
}

bool RealAbelianField::contains(const Cyclotomic& x) const {
  for (long h : hgens_)
    if (x.galois(h) != x) return false;
  return true;
}

Cyclotomic RealAbelianField::apply(std::size_t g, const Cyclotomic& x) const { return x.galois(group_->residue(g)); }

Rat RealAbelianField::norm_to_q(const Cyclotomic& x) const {
  Cyclotomic p = Cyclotomic::one(qzeta_);
  for (std::size_t g = 0; g < group_->order(); ++g) p *= apply(g, x);
  return p.rational_value();
}

std::string RealAbelianField::key() const {
  std::string s = "m" + std::to_string(m_) + "_H";
  for (std::size_t i = 0; i < hgens_.size(); ++i) {
    if (i) s += "-";
    s += std::to_string(hgens_[i]);
  }
  return s;
}

std::vector<std::size_t> decomposition_group(const RealAbelianField& field, long p) {
  if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
  const long m = field.conductor();
  const auto& g = field.group();
  long pk = 1, mp = m;
  while (mp % p == 0) {
    mp /= p;
    pk *= p;
  }
  std::vector<std::size_t> gens;
  if (pk == 1) {
    gens.push_back(g->element_of_residue(p));
  } else {
    for (long a = 1; a < m; ++a)
      if (gcd_long(a, m) == 1 && mod_long(a, mp) == 1 % mp) gens.push_back(g->element_of_residue(a));
    if (mp > 1)
      for (long a = 1; a < m; ++a)
        if (mod_long(a, pk) == 1 && mod_long(a, mp) == mod_long(p, mp)) {
          gens.push_back(g->element_of_residue(a));
          break;
        }
  }
  return g->subgroup(gens);
}

std::vector<Place> make_places(const RealAbelianField& field, std::vector<long> primes) {
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::vector<Place> out;
  const auto& g = field.group();
  Place inf;
  inf.infinite = true;
  inf.decomposition = {0};  // L is real
  inf.cosets = g->cosets(inf.decomposition);
  out.push_back(inf);
  for (long p : primes) {
    Place v;
    v.prime = p;
    v.decomposition = decomposition_group(field, p);
    v.cosets = g->cosets(v.decomposition);
    out.push_back(v);
  }
  return out;
}

std::vector<Place> canonical_places(const RealAbelianField& field) {
  return make_places(field, prime_factors(field.conductor()));
}

std::vector<long> finite_primes(const std::vector<Place>& s) {
  std::vector<long> out;
  for (const auto& v : s)
    if (!v.infinite) out.push_back(v.prime);
  return out;
}

std::size_t places_of_L(const std::vector<Place>& s) {
  std::size_t n = 0;
  for (const auto& v : s) n += v.cosets.size();
  return n;
}

YXData build_YX(const FieldHandle& field, const std::vector<Place>& s) {
  if (s.empty() || !s[0].infinite) throw InputError("S must contain the infinite place");
  const auto& g = field->group();
  YXData d;
  d.places = s;
  std::size_t dim = 0;
  for (const auto& v : s) {
    d.offsets.push_back(dim);
    dim += v.cosets.size();
  }
  std::vector<RatMatrix> action;
  for (std::size_t h = 0; h < g->order(); ++h) {
    RatMatrix a(dim, dim, Rat(0));
    for (std::size_t b = 0; b < s.size(); ++b) {
      const auto& cs = s[b].cosets;
      for (std::size_t c = 0; c < cs.size(); ++c) {
        std::size_t img = g->mul(h, cs[c][0]);
        for (std::size_t c2 = 0; c2 < cs.size(); ++c2)
          if (std::binary_search(cs[c2].begin(), cs[c2].end(), img)) a(d.offsets[b] + c2, d.offsets[b] + c) = 1;
      }
    }
    action.push_back(a);
  }
  d.y = GLattice::make(g, action, identity_rat(dim));
  RatMatrix xgens(0, dim);
  for (std::size_t i = 1; i < dim; ++i) {
    std::vector<Rat> v(dim, Rat(0));
    v[i] = 1;
    v[0] = -1;
    xgens.append_row(v);
  }
  d.x = GLattice::make(g, action, xgens);
  d.pi = RatMatrix(g->order(), dim, Rat(0));
  for (std::size_t x = 0; x < g->order(); ++x) d.pi(x, d.offsets[0] + x) = 1;
  d.w_inf.assign(dim, Rat(0));
  d.w_inf[d.offsets[0]] = 1;
  d.w_0.assign(dim, Rat(0));
  if (s.size() > 1) d.w_0[d.offsets[1]] = 1;
  return d;
}

Complex embed(const Cyclotomic& x, long a, unsigned precision) {
  check_precision(precision);
  PrecisionScope scope(precision);
  return x.evaluate(a);
}

std::vector<Real> log_embedding(const Cyclotomic& x, const FieldHandle& field, const std::vector<Place>& s) {
  if (x.is_zero()) throw InputError("logarithm of zero");
  const auto& g = field->group();
  std::vector<Real> out;
  bool have_norm = false;
  Rat norm;
  for (const auto& v : s) {
    if (v.infinite) {
      for (std::size_t e = 0; e < g->order(); ++e) {
        Complex z = x.evaluate(g->residue(g->inv(e)));
        out.push_back(boost::multiprecision::log(abs_complex(z)));
      }
      continue;
    }
    if (v.cosets.size() != 1)
      throw UnsupportedError("finite logarithms need a single place of L above " + std::to_string(v.prime));
    if (!have_norm) {
      norm = field->norm_to_q(x);
      have_norm = true;
    }
    out.push_back(-Real(valuation(norm, v.prime)) * log_of(v.prime));
  }
  return out;
}

Real log_abs(const Cyclotomic& x, const FieldHandle& field, const Place& v, std::size_t coset, unsigned precision) {
  check_precision(precision);
  PrecisionScope scope(precision);
  if (x.is_zero()) throw InputError("logarithm of zero");
  const auto& g = field->group();
  if (v.infinite) {
    std::size_t e = v.cosets.at(coset)[0];
    return boost::multiprecision::log(abs_complex(x.evaluate(g->residue(g->inv(e)))));
  }
  auto all = log_embedding(x, field, {v});
  return all.at(coset);
}

namespace {

long parse_prime(const nlohmann::json& e) {
  long p = 0;
  if (e.is_number_integer())
    p = e.get<long>();
  else if (e.is_string())
    p = std::stol(e.get<std::string>());
  else
    throw invariant_error("schema", "place entries must be \"inf\" or primes");
  if (!is_prime(p)) throw invariant_error("schema", std::to_string(p) + " is not prime");
  return p;
}

Cyclotomic product_power(const std::vector<Cyclotomic>& basis, const std::vector<Int>& exps, const FieldPtr& f) {
  Cyclotomic p = Cyclotomic::one(f);
  for (std::size_t j = 0; j < basis.size(); ++j)
    if (exps[j] > 0) p *= basis[j].pow(exps[j].get_si());
  return p;
}

}  // namespace

std::shared_ptr<const SUnitBasis> SUnitBasis::from_json(const nlohmann::json& j, unsigned precision) {
  check_precision(precision);
  auto b = std::shared_ptr<SUnitBasis>(new SUnitBasis());
  try {
    const auto& fj = j.at("field");
    b->field_ = RealAbelianField::make(fj.at("conductor").get<long>(), fj.at("subgroup_gens").get<std::vector<long>>());
    bool has_inf = false;
    std::vector<long> primes;
    for (const auto& e : j.at("S")) {
      if (e.is_string() && e.get<std::string>() == "inf")
        has_inf = true;
      else
        primes.push_back(parse_prime(e));
    }
    if (!has_inf) throw invariant_error("schema", "S must contain inf");
    b->s_ = make_places(*b->field_, primes);
    for (const auto& e : j.value("T", nlohmann::json::array())) b->t_.push_back(parse_prime(e));
    std::sort(b->t_.begin(), b->t_.end());
    for (long q : b->t_) {
      if (b->field_->conductor() % q == 0 || std::count(primes.begin(), primes.end(), q))
        throw invariant_error("schema", "T must be disjoint from S and unramified");
    }
    const auto& f = b->field_->cyclotomic();
    for (const auto& row : j.at("basis")) {
      std::vector<Rat> c;
      for (const auto& s : row) c.push_back(parse_rational(s.get<std::string>()));
      if (c.size() != f->degree())
        throw invariant_error("schema", "basis element has " + std::to_string(c.size()) + " coefficients, expected " + std::to_string(f->degree()));
      b->basis_.push_back(Cyclotomic::from_coefficients(f, c));
    }
    const std::size_t n = b->basis_.size();
    if (n + 1 != places_of_L(b->s_))
      throw invariant_error("rank", "basis has " + std::to_string(n) + " elements, S-unit rank is " + std::to_string(places_of_L(b->s_) - 1));
    const auto& g = b->field_->group();
    std::set<long> sp(primes.begin(), primes.end());
    for (std::size_t i = 0; i < n; ++i) {
      const auto& x = b->basis_[i];
      if (x.is_zero()) throw invariant_error("s_unit", "basis element " + std::to_string(i) + " is zero");
      if (!b->field_->contains(x)) throw invariant_error("in_field", "basis element " + std::to_string(i) + " is not fixed by H");
      Rat nrm = b->field_->norm_to_q(x);
      for (const auto& part : {nrm.get_num(), nrm.get_den()}) {
        Int rest = abs(part);
        for (long p : sp)
          while (mpz_divisible_ui_p(rest.get_mpz_t(), static_cast<unsigned long>(p))) rest /= p;
        if (rest != 1) throw invariant_error("s_unit", "norm of basis element " + std::to_string(i) + " has prime factors outside S");
      }
      for (long q : b->t_) {
        auto c = (x - Cyclotomic::one(f)).coefficients();
        for (const auto& ci : c)
          if (ci != 0 && valuation(ci, q) < 1)
            throw invariant_error("t_congruence", "basis element " + std::to_string(i) + " is not congruent to 1 modulo " + std::to_string(q));
      }
    }
    std::vector<std::pair<std::size_t, RatMatrix>> gens;
    for (const auto& [label, data] : j.at("action").items()) {
      long a = std::stol(label);
      std::size_t elt = g->element_of_residue(a);
      auto mat = data.at("matrix").get<std::vector<std::vector<long>>>();
      auto signs = data.at("signs").get<std::vector<long>>();
      if (mat.size() != n || signs.size() != n) throw invariant_error("schema", "action matrix for " + label + " has the wrong size");
      IntMatrix mi(n, n);
      for (std::size_t r = 0; r < n; ++r) {
        if (mat[r].size() != n) throw invariant_error("schema", "action matrix for " + label + " has the wrong size");
        for (std::size_t c = 0; c < n; ++c) mi(r, c) = mat[r][c];
      }
      for (std::size_t r = 0; r < n; ++r) {
        if (signs[r] != 1 && signs[r] != -1) throw invariant_error("schema", "signs must be +1 or -1");
        std::vector<Int> pos(n), neg(n);
        for (std::size_t c = 0; c < n; ++c) {
          pos[c] = mi(r, c) > 0 ? mi(r, c) : Int(0);
          neg[c] = mi(r, c) < 0 ? Int(-mi(r, c)) : Int(0);
        }
        Cyclotomic lhs = b->basis_[r].galois(a) * product_power(b->basis_, neg, f);
        Cyclotomic rhs = product_power(b->basis_, pos, f) * Rat(signs[r]);
        if (lhs != rhs)
          throw invariant_error("galois_action", "sigma_" + label + " of basis element " + std::to_string(r) + " does not match the action matrix");
      }
      gens.emplace_back(elt, to_rat(mi.transpose()));
    }
    std::vector<RatMatrix> full;
    try {
      full = GLattice::extend_action(g, gens);
    } catch (const InputError& e) {
      throw invariant_error("group_relations", e.what());
    }
    for (const auto& a : full) b->action_.push_back(to_int(a));
  } catch (const nlohmann::json::exception& e) {
    throw invariant_error("schema", e.what());
  }
  // Multiplicative independence: the log vectors have full rank.
  {
    PrecisionScope scope(precision);
    auto logs = b->log_vectors();
    const std::size_t n = logs.size();
    std::vector<std::vector<Real>> gram(n, std::vector<Real>(n, Real(0)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t t = 0; t < logs[i].size(); ++t) gram[i][k] += logs[i][t] * logs[k][t];
    Real det = 1;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      for (std::size_t i = c + 1; i < n; ++i)
        if (abs(gram[i][c]) > abs(gram[p][c])) p = i;
      std::swap(gram[p], gram[c]);
      if (abs(gram[c][c]) < tolerance_from_digits(precision / 2)) throw invariant_error("independence", "basis elements are multiplicatively dependent");
      det *= gram[c][c];
      for (std::size_t i = c + 1; i < n; ++i) {
        Real fct = gram[i][c] / gram[c][c];
        for (std::size_t k = c; k < n; ++k) gram[i][k] -= fct * gram[c][k];
      }
    }
  }
  return b;
}

std::shared_ptr<const SUnitBasis> SUnitBasis::load(const std::string& path, unsigned precision) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open fixture " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("cannot parse fixture " + path + ": " + e.what());
  }
  try {
    return from_json(j, precision);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

GLattice SUnitBasis::lattice() const {
  std::vector<RatMatrix> action;
  for (const auto& a : action_) action.push_back(to_rat(a));
  return GLattice::make(field_->group(), action, identity_rat(rank()));
}

std::vector<std::vector<Real>> SUnitBasis::log_vectors() const {
  std::vector<std::vector<Real>> out;
  for (const auto& b : basis_) out.push_back(log_embedding(b, field_, s_));
  return out;
}

MultiplicativeElement MultiplicativeElement::act(std::size_t g) const {
  return {basis, times_col(to_rat(basis->exponent_action(g)), exponents)};
}

MultiplicativeElement MultiplicativeElement::act(const QG& x) const {
  std::vector<Rat> out(exponents.size(), Rat(0));
  for (std::size_t h = 0; h < x.coeffs().size(); ++h) {
    if (x[h] == 0) continue;
    auto v = act(h).exponents;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += x[h] * v[i];
  }
  return {basis, out};
}

MultiplicativeElement MultiplicativeElement::operator+(const MultiplicativeElement& o) const {
  if (basis != o.basis) throw InputError("elements over different bases");
  auto v = exponents;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += o.exponents[i];
  return {basis, v};
}

MultiplicativeElement MultiplicativeElement::scaled(const Rat& q) const {
  auto v = exponents;
  for (auto& x : v) x *= q;
  return {basis, v};
}

bool MultiplicativeElement::is_zero() const {
  return std::all_of(exponents.begin(), exponents.end(), [](const Rat& q) { return q == 0; });
}

std::vector<Real> dirichlet_regulator(const MultiplicativeElement& u) {
  if (!u.basis || u.exponents.size() != u.basis->rank()) throw InputError("element does not match its basis");
  auto logs = u.basis->log_vectors();
  std::vector<Real> out(places_of_L(u.basis->places()), Real(0));
  for (std::size_t i = 0; i < logs.size(); ++i) {
    if (u.exponents[i] == 0) continue;
    Real e = to_real(u.exponents[i]);
    for (std::size_t t = 0; t < out.size(); ++t) out[t] += e * logs[i][t];
  }
  return out;
}

namespace {

Cyclotomic power_of(const Cyclotomic& y, const Int& k) {
  if (k < 0) throw InputError("negative power in exact verification");
  if (!k.fits_slong_p() || k > 1000) throw UnsupportedError("exponent too large for exact verification");
  return y.pow(k.get_si());
}

}  // namespace

bool verify_expression(const FormalProduct& x, const MultiplicativeElement& e, unsigned precision) {
  check_precision(precision);
  PrecisionScope scope(precision);
  const auto& basis = *e.basis;
  const auto& f = basis.field()->cyclotomic();
  const long m = f->conductor();
  Int d = 1;
  for (const auto& [y, c] : x) d = lcm(d, c.get_den());
  for (const auto& q : e.exponents) d = lcm(d, q.get_den());
  Cyclotomic a = Cyclotomic::one(f), b = Cyclotomic::one(f);
  for (const auto& [y, c] : x) {
    Rat k = c * d;
    if (k > 0)
      a *= power_of(y, k.get_num());
    else if (k < 0)
      b *= power_of(y, -k.get_num());
  }
  for (std::size_t i = 0; i < basis.rank(); ++i) {
    Rat k = e.exponents[i] * d;
    if (k < 0)
      a *= power_of(basis.elements()[i], -k.get_num());
    else if (k > 0)
      b *= power_of(basis.elements()[i], k.get_num());
  }
  // a / b should be a root of unity in Q(zeta_m); locate it from the argument.
  Complex za = a.evaluate(1), zb = b.evaluate(1);
  Real re = za.re * zb.re + za.im * zb.im;
  Real im = za.im * zb.re - za.re * zb.im;
  Real theta = boost::multiprecision::atan2(im, re);
  const long roots = m % 2 == 0 ? m : 2 * m;
  long k = boost::multiprecision::lround(theta * roots / (2 * real_pi()));
  k = mod_long(k, roots);
  Cyclotomic t;
  if (roots == m) {
    t = Cyclotomic::zeta(f, k);
  } else {
    t = Cyclotomic::zeta(f, k * ((m + 1) / 2));
    if (k % 2 == 1) t = -t;
  }
  return a == t * b;
}

MultiplicativeElement express_in_basis(const FormalProduct& x, const BasisHandle& basis, const ExpressOptions& opt) {
  check_precision(opt.precision);
  if (opt.denominator_bound < 1) throw InputError("denominator bound must be positive");
  PrecisionScope scope(opt.precision);
  const auto& field = basis->field();
  const auto& places = basis->places();
  const std::size_t dim = places_of_L(places);
  std::vector<Real> v(dim, Real(0));
  for (const auto& [y, c] : x) {
    if (y.field() != field->cyclotomic()) throw InputError("factor lives in a different cyclotomic field");
    if (!field->contains(y)) throw InputError("factor is not in the field L");
    auto l = log_embedding(y, field, places);
    Real cr = to_real(c);
    for (std::size_t t = 0; t < dim; ++t) v[t] += cr * l[t];
  }
  auto logs = basis->log_vectors();
  const std::size_t n = logs.size();
  // Normal equations (L L^T) e = L v.
  std::vector<std::vector<Real>> a(n, std::vector<Real>(n + 1, Real(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t t = 0; t < dim; ++t) a[i][k] += logs[i][t] * logs[k][t];
    for (std::size_t t = 0; t < dim; ++t) a[i][n] += logs[i][t] * v[t];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (abs(a[i][c]) > abs(a[p][c])) p = i;
    std::swap(a[p], a[c]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      Real fct = a[i][c] / a[c][c];
      for (std::size_t k = c; k <= n; ++k) a[i][k] -= fct * a[c][k];
    }
  }
  std::vector<Real> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = a[i][n] / a[i][i];
  const Real tol = tolerance_from_digits(opt.precision / 2);
  for (std::size_t t = 0; t < dim; ++t) {
    Real s = -v[t];
    for (std::size_t i = 0; i < n; ++i) s += e[i] * logs[i][t];
    if (abs(s) > tol) throw InputError("element is not in the span of the basis (log residual too large)");
  }
  MultiplicativeElement out{basis, std::vector<Rat>(n)};
  bool found = false;
  for (long d = 1; d <= opt.denominator_bound && !found; ++d) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      Real scaled = e[i] * d;
      Real r = boost::multiprecision::round(scaled);
      if (abs(scaled - r) > tol)
        ok = false;
      else
        out.exponents[i] = Rat(Int(r.convert_to<long>()), Int(d));
    }
    found = ok;
  }
  if (!found)
    throw InputError("exponents do not reconstruct with denominator at most " + std::to_string(opt.denominator_bound));
  for (auto& q : out.exponents) q.canonicalize();
  if (!verify_expression(x, out, opt.precision)) throw InputError("exact verification of the expression failed");
  return out;
}

}  // namespace cyclostark
