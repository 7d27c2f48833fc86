#include "cyclostark/lseries.hpp"

namespace cyclostark {

Complex root_of_unity(long k, long n) {
  Real t = 2 * real_pi() * Real(mod_long(k, n)) / Real(n);
  return {boost::multiprecision::cos(t), boost::multiprecision::sin(t)};
}

long vanishing_order(const Character& chi, const std::vector<Place>& s) {
  if (chi.is_trivial()) return static_cast<long>(s.size()) - 1;
  long r = 0;
  for (const auto& v : s)
    if (chi.trivial_on(v.decomposition)) ++r;
  return r;
}

Complex l_derivative_at_zero(const Character& chi, const RealAbelianField& field, unsigned precision) {
  if (precision < kMinPrecision) throw InputError("precision must be at least " + std::to_string(kMinPrecision) + " digits");
  if (chi.group() != field.group()) throw InputError("character of a different group");
  PrecisionScope scope(precision + 10);
  const long m = field.conductor();
  const long e = field.group()->exponent();
  const auto& g = field.group();
  Complex sum{Real(0), Real(0)};
  for (long a = 1; a < m; ++a) {
    if (gcd_long(a, m) != 1) continue;
    Real t = 2 * real_pi() * Real(a) / Real(m);
    // |1 - zeta^a| = 2 |sin(pi a / m)|
    Real l = boost::multiprecision::log(2 * boost::multiprecision::abs(boost::multiprecision::sin(t / 2)));
    Complex c = root_of_unity(chi.exponent_at(g->element_of_residue(a)), e);
    sum.re += c.re * l;
    sum.im += c.im * l;
  }
  PrecisionScope out(precision);
  return {Real(-sum.re / 2), Real(-sum.im / 2)};
}

LValueReport l_value_report(const Character& chi, const RealAbelianField& field, unsigned precision) {
  LValueReport r;
  r.label = chi.label();
  r.vanishing_order = vanishing_order(chi, canonical_places(field));
  r.derivative = l_derivative_at_zero(chi, field, precision);
  r.precision = precision;
  return r;
}

nlohmann::json LValueReport::to_json() const {
  return {{"character", label},
          {"vanishing_order", vanishing_order},
          {"derivative", {{"re", to_decimal(derivative.re, precision)}, {"im", to_decimal(derivative.im, precision)}}},
          {"precision", precision}};
}

RG equivariant_leading_term(const RealAbelianField& field, unsigned precision) {
  const auto& g = field.group();
  const long e = g->exponent();
  auto chars = characters_of(g);
  std::vector<Complex> lv;
  for (const auto& chi : chars) lv.push_back(l_derivative_at_zero(chi.inverse(), field, precision));
  PrecisionScope scope(precision);
  std::vector<Real> c(g->order(), Real(0));
  const Real n = Real(static_cast<long>(g->order()));
  // coefficient at h: |G|^{-1} sum_chi L'(chi^{-1}) chi(h^{-1})
  for (std::size_t h = 0; h < g->order(); ++h) {
    for (std::size_t k = 0; k < chars.size(); ++k) {
      Complex z = root_of_unity(chars[k].exponent_at(g->inv(h)), e);
      c[h] += lv[k].re * z.re - lv[k].im * z.im;
    }
    c[h] /= n;
  }
  return RG(g, c);
}

}  // namespace cyclostark
