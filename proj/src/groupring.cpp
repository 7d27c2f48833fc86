#include "cyclostark/groupring.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>

#include "cyclostark/linalg.hpp"
#include "cyclostark/wedderburn.hpp"

namespace cyclostark {

QG qg_zero(const GroupPtr& g) { return QG::zero(g, Rat(0)); }
QG qg_one(const GroupPtr& g) { return QG::scalar(g, Rat(1)); }
QG qg_basis(const GroupPtr& g, std::size_t elt) { return QG::basis(g, elt, Rat(1)); }

QG qg_from_residues(const GroupPtr& g, const std::vector<std::pair<long, Rat>>& terms) {
  QG x = qg_zero(g);
  for (const auto& [a, c] : terms) x[g->element_of_residue(a)] += c;
  return x;
}

bool is_integral(const QG& x) {
  for (const auto& c : x.coeffs())
    if (c.get_den() != 1) return false;
  return true;
}

std::string to_json_string(const QG& x) {
  std::string s = "{";
  bool first = true;
  for (std::size_t g = 0; g < x.coeffs().size(); ++g) {
    if (x[g] == 0) continue;
    if (!first) s += ", ";
    first = false;
    s += "\"" + x.group()->name(g) + "\": \"" + to_string(x[g]) + "\"";
  }
  return s + "}";
}

Cyclotomic character_value(const Character& chi, std::size_t g) {
  auto f = CyclotomicField::get(chi.group()->exponent());
  return Cyclotomic::zeta(f, chi.exponent_at(g));
}

Cyclotomic character_of(const Character& chi, const QG& x) {
  auto f = CyclotomicField::get(chi.group()->exponent());
  const long e = chi.group()->exponent();
  // Accumulate coefficients per power of zeta_e, then reduce once.
  std::vector<Rat> by_power(static_cast<std::size_t>(e), Rat(0));
  for (std::size_t g = 0; g < x.coeffs().size(); ++g)
    if (x[g] != 0) by_power[static_cast<std::size_t>(chi.exponent_at(g))] += x[g];
  Cyclotomic s = Cyclotomic::zero(f);
  for (long k = 0; k < e; ++k)
    if (by_power[static_cast<std::size_t>(k)] != 0) s += Cyclotomic::zeta(f, k) * by_power[static_cast<std::size_t>(k)];
  return s;
}

std::vector<Character> galois_orbit(const Character& chi) {
  std::vector<Character> out;
  const long o = static_cast<long>(chi.order());
  for (long a = 1; a <= o; ++a) {
    if (std::gcd(a, o) != 1) continue;
    std::vector<long> c = chi.coords();
    for (auto& x : c) x *= a;
    Character psi(chi.group(), c);
    bool dup = false;
    for (const auto& q : out)
      if (q == psi) dup = true;
    if (!dup) out.push_back(psi);
  }
  return out;
}

CG idempotent(const Character& chi) {
  const auto& g = chi.group();
  Rat inv_order(1, static_cast<long>(g->order()));
  std::vector<Cyclotomic> c;
  for (std::size_t x = 0; x < g->order(); ++x) c.push_back(character_value(chi, g->inv(x)) * inv_order);
  return CG(g, c);
}

QG rational_idempotent(const Character& chi) {
  const auto& g = chi.group();
  auto orbit = galois_orbit(chi);
  auto f = CyclotomicField::get(g->exponent());
  QG out = qg_zero(g);
  for (std::size_t x = 0; x < g->order(); ++x) {
    Cyclotomic s = Cyclotomic::zero(f);
    for (const auto& psi : orbit) s += character_value(psi, g->inv(x));
    out[x] = s.rational_value() / static_cast<long>(g->order());
  }
  return out;
}

QG from_character_values(const GroupPtr& g, const std::vector<Character>& chars, const std::vector<Cyclotomic>& values) {
  if (chars.size() != values.size()) throw InputError("character/value count mismatch");
  auto f = CyclotomicField::get(g->exponent());
  QG out = qg_zero(g);
  Rat inv_order(1, static_cast<long>(g->order()));
  for (std::size_t x = 0; x < g->order(); ++x) {
    Cyclotomic s = Cyclotomic::zero(f);
    for (std::size_t i = 0; i < chars.size(); ++i) {
      if (values[i].is_zero()) continue;
      s += values[i] * character_value(chars[i], g->inv(x));
    }
    if (!s.is_rational()) throw InputError("character components do not assemble to a rational element");
    out[x] = s.rational_value() * inv_order;
  }
  return out;
}

RG to_real(const QG& x) {
  std::vector<Real> c;
  for (const auto& q : x.coeffs()) c.push_back(Real(q.get_num().get_str()) / Real(q.get_den().get_str()));
  return RG(x.group(), c);
}

QGMatrix qg_matrix(const GroupPtr& g, std::size_t rows, std::size_t cols) {
  return QGMatrix(rows, cols, qg_zero(g));
}

QGMatrix transpose(const QGMatrix& m) { return m.transpose(); }

QGMatrix multiply(const QGMatrix& a, const QGMatrix& b) {
  if (a.cols() != b.rows()) throw InputError("matrix product shape mismatch");
  if (a.rows() == 0 || b.cols() == 0) return QGMatrix(a.rows(), b.cols());
  const auto& g = a(0, 0).group();
  QGMatrix c = qg_matrix(g, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k) c(i, j) += a(i, k) * b(k, j);
  return c;
}

QG ring_determinant(const QGMatrix& m) {
  if (m.rows() != m.cols()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) throw InputError("determinant of an empty matrix needs a group");
  const auto& g = m(0, 0).group();
  if (!g->is_abelian()) throw UnsupportedError("ring determinant over a non-commutative group ring");
  if (n > 20) throw UnsupportedError("matrix too large for cofactor expansion");
  std::map<std::uint32_t, QG> memo;
  // det of rows row..n-1 restricted to the columns in mask (popcount = n - row).
  std::function<QG(std::size_t, std::uint32_t)> rec = [&](std::size_t row, std::uint32_t mask) -> QG {
    if (row == n) return qg_one(g);
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    QG acc = qg_zero(g);
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (!(mask & (1u << c))) continue;
      if (!m(row, c).is_zero()) {
        QG term = m(row, c) * rec(row + 1, mask & ~(1u << c));
        if (sign > 0)
          acc += term;
        else
          acc -= term;
      }
      sign = -sign;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return rec(0, (n == 32) ? 0xffffffffu : ((1u << n) - 1));
}

Cyclotomic cyclotomic_determinant(Matrix<Cyclotomic> a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw InputError("determinant of a non-square matrix");
  if (n == 0) throw InputError("empty determinant");
  Cyclotomic det = Cyclotomic::one(a(0, 0).field());
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = n;
    for (std::size_t i = c; i < n; ++i)
      if (!a(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p == n) return Cyclotomic::zero(det.field());
    if (p != c) {
      a.swap_rows(p, c);
      det = -det;
    }
    det *= a(c, c);
    if (c + 1 == n) break;
    Cyclotomic inv = a(c, c).inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      Cyclotomic f = a(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

QG reduced_norm(const QGMatrix& m, const WedderburnData* wd) {
  if (m.rows() != m.cols()) throw InputError("reduced norm of a non-square matrix");
  if (m.rows() == 0) throw InputError("reduced norm of an empty matrix");
  const auto& g = m(0, 0).group();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j).group() != g) throw InputError("matrix entries over different groups");
  if (!g->is_abelian()) {
    if (!wd) throw UnsupportedError("reduced norm over a non-commutative group ring needs Wedderburn data");
    return wd->reduced_norm(m);
  }
  auto chars = characters_of(g);
  std::vector<Cyclotomic> dets;
  for (const auto& chi : chars) {
    Matrix<Cyclotomic> cm(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) cm(i, j) = character_of(chi, m(i, j));
    dets.push_back(cyclotomic_determinant(cm));
  }
  return from_character_values(g, chars, dets);
}

namespace {

RatMatrix rows_of(const GroupPtr& g, const std::vector<QG>& xs) {
  RatMatrix m(0, g->order());
  for (const auto& x : xs) {
    if (x.group() != g) throw InputError("ideal generator over a different group");
    m.append_row(x.coeffs());
  }
  return m;
}

}  // namespace

IdealLattice IdealLattice::z_span(const GroupPtr& g, const std::vector<QG>& gens) {
  IdealLattice l;
  l.group_ = g;
  l.basis_ = gens.empty() ? RatMatrix(0, g->order()) : lattice_span(rows_of(g, gens));
  return l;
}

IdealLattice IdealLattice::generated_by(const GroupPtr& g, const std::vector<QG>& gens) {
  std::vector<QG> all;
  for (const auto& x : gens)
    for (std::size_t h = 0; h < g->order(); ++h) all.push_back(x.left_translate(h));
  return z_span(g, all);
}

IdealLattice IdealLattice::unit(const GroupPtr& g) { return generated_by(g, {qg_one(g)}); }
IdealLattice IdealLattice::zero(const GroupPtr& g) { return z_span(g, {}); }

std::vector<QG> IdealLattice::elements() const {
  std::vector<QG> out;
  for (std::size_t i = 0; i < basis_.rows(); ++i) out.emplace_back(group_, basis_.row(i));
  return out;
}

bool IdealLattice::contains(const QG& x) const {
  if (x.is_zero()) return true;
  if (basis_.rows() == 0) return false;
  auto c = solve_left(basis_, x.coeffs());
  return c && cyclostark::is_integral(*c);
}

bool IdealLattice::contains(const IdealLattice& other) const {
  for (const auto& x : other.elements())
    if (!contains(x)) return false;
  return true;
}

bool IdealLattice::is_integral() const {
  for (std::size_t i = 0; i < basis_.rows(); ++i)
    if (!cyclostark::is_integral(basis_.row(i))) return false;
  return true;
}

bool IdealLattice::is_ideal() const {
  for (const auto& x : elements())
    for (std::size_t h = 0; h < group_->order(); ++h)
      if (!contains(x.left_translate(h))) return false;
  return true;
}

}  // namespace cyclostark
