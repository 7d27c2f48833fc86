#include "cyclostark/lattice.hpp"

#include <deque>
#include <functional>
#include <map>

namespace cyclostark {

namespace {

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<Rat> unit_vector(std::size_t n, std::size_t i) {
  std::vector<Rat> v(n, Rat(0));
  v[i] = 1;
  return v;
}

}  // namespace

std::vector<RatMatrix> GLattice::extend_action(const GroupPtr& g,
                                               const std::vector<std::pair<std::size_t, RatMatrix>>& gens) {
  if (gens.empty() && g->order() > 1) throw InputError("action given on no generators");
  const std::size_t n = gens.empty() ? 0 : gens[0].second.rows();
  std::vector<RatMatrix> act(g->order());
  std::vector<bool> seen(g->order(), false);
  act[0] = identity_rat(n);
  seen[0] = true;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (const auto& [s, a] : gens) {
      if (a.rows() != n || a.cols() != n) throw InputError("action matrices have inconsistent sizes");
      std::size_t y = g->mul(x, s);
      RatMatrix m = act[x] * a;
      if (!seen[y]) {
        seen[y] = true;
        act[y] = m;
        queue.push_back(y);
      } else if (!(act[y] == m)) {
        throw InputError("action matrices do not satisfy the group relations");
      }
    }
  }
  for (bool b : seen)
    if (!b) throw InputError("action generators do not generate the group");
  return act;
}

GLattice GLattice::make(GroupPtr g, std::vector<RatMatrix> action, const RatMatrix& z_generators) {
  if (action.size() != g->order()) throw InputError("one action matrix per group element expected");
  GLattice l;
  l.group_ = std::move(g);
  l.action_ = std::move(action);
  const std::size_t n = l.ambient_dim();
  for (const auto& a : l.action_)
    if (a.rows() != n || a.cols() != n) throw InputError("action matrix has the wrong size");
  if (z_generators.cols() != n && z_generators.rows() > 0) throw InputError("generator length does not match the ambient dimension");
  l.basis_ = z_generators.rows() == 0 ? RatMatrix(0, n) : lattice_span(z_generators);
  l.solver_ = std::make_shared<RowSpaceSolver>(l.basis_);
  for (std::size_t s : l.group_->generators())
    for (std::size_t i = 0; i < l.basis_.rows(); ++i)
      if (!l.contains(l.act(s, l.basis_.row(i)))) throw InputError("lattice is not stable under the group action");
  return l;
}

GLattice GLattice::spanned(GroupPtr g, std::vector<RatMatrix> action, const RatMatrix& generators) {
  const std::size_t n = action.empty() ? 0 : action[0].rows();
  RatMatrix all(0, n);
  for (std::size_t i = 0; i < generators.rows(); ++i)
    for (std::size_t h = 0; h < g->order(); ++h) all.append_row(times_col(action[h], generators.row(i)));
  return make(std::move(g), std::move(action), all);
}

GLattice GLattice::free(const GroupPtr& g, std::size_t d) {
  const std::size_t n = g->order();
  std::vector<RatMatrix> action;
  for (std::size_t h = 0; h < n; ++h) {
    RatMatrix a(n * d, n * d, Rat(0));
    for (std::size_t blk = 0; blk < d; ++blk)
      for (std::size_t x = 0; x < n; ++x) a(blk * n + g->mul(h, x), blk * n + x) = 1;
    action.push_back(a);
  }
  return make(g, action, identity_rat(n * d));
}

GLattice GLattice::regular(const GroupPtr& g) { return free(g, 1); }

GLattice GLattice::trivial(const GroupPtr& g, std::size_t d) {
  std::vector<RatMatrix> action(g->order(), identity_rat(d));
  return make(g, action, identity_rat(d));
}

std::vector<Rat> GLattice::act(std::size_t g, const std::vector<Rat>& v) const { return times_col(action_.at(g), v); }

std::vector<Rat> GLattice::act(const QG& x, const std::vector<Rat>& v) const {
  std::vector<Rat> out(v.size(), Rat(0));
  for (std::size_t h = 0; h < group_->order(); ++h) {
    if (x[h] == 0) continue;
    auto w = act(h, v);
    for (std::size_t i = 0; i < v.size(); ++i) out[i] += x[h] * w[i];
  }
  return out;
}

std::optional<std::vector<Rat>> GLattice::coordinates(const std::vector<Rat>& v) const { return solver_->solve(v); }

std::vector<Rat> GLattice::from_coordinates(const std::vector<Rat>& c) const { return row_times(c, basis_); }

bool GLattice::contains(const std::vector<Rat>& v) const {
  auto c = coordinates(v);
  return c && is_integral(*c);
}

bool GLattice::contains(const GLattice& other) const {
  for (std::size_t i = 0; i < other.basis_.rows(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

IntMatrix GLattice::lattice_action(std::size_t g) const {
  const std::size_t k = rank();
  IntMatrix l(k, k);
  for (std::size_t j = 0; j < k; ++j) {
    auto c = coordinates(act(g, basis_.row(j)));
    if (!c || !is_integral(*c)) throw InputError("lattice is not stable under the group action");
    for (std::size_t i = 0; i < k; ++i) l(i, j) = (*c)[i].get_num();
  }
  return l;
}

GLattice GLattice::sublattice(const RatMatrix& generators) const { return spanned(group_, action_, generators); }

GLattice GLattice::z_sublattice(const RatMatrix& generators) const { return make(group_, action_, generators); }

std::vector<Rat> HomLattice::apply(std::size_t i, const std::vector<Rat>& c) const {
  const IntMatrix& x = maps.at(i);
  if (c.size() != x.cols()) throw InputError("source coordinates have the wrong length");
  std::vector<Rat> out(x.rows(), Rat(0));
  for (std::size_t p = 0; p < x.rows(); ++p)
    for (std::size_t q = 0; q < x.cols(); ++q)
      if (x(p, q) != 0 && c[q] != 0) out[p] += Rat(x(p, q)) * c[q];
  return out;
}

HomLattice hom_lattice(const GLattice& m, const GLattice& n) {
  if (m.group() != n.group()) throw InputError("Hom between lattices over different groups");
  const auto& g = m.group();
  const std::size_t km = m.rank(), kn = n.rank();
  const auto gens = g->generators();
  std::vector<IntMatrix> lm, ln;
  for (auto s : gens) {
    lm.push_back(m.lattice_action(s));
    ln.push_back(n.lattice_action(s));
  }
  const std::size_t unknowns = kn * km;
  RatMatrix c(unknowns, gens.size() * unknowns, Rat(0));
  for (std::size_t s = 0; s < gens.size(); ++s)
    for (std::size_t p = 0; p < kn; ++p)
      for (std::size_t q = 0; q < km; ++q) {
        std::size_t col = s * unknowns + p * km + q;
        for (std::size_t j = 0; j < km; ++j)
          if (lm[s](j, q) != 0) c(p * km + j, col) += Rat(lm[s](j, q));
        for (std::size_t i = 0; i < kn; ++i)
          if (ln[s](p, i) != 0) c(i * km + q, col) -= Rat(ln[s](p, i));
      }
  IntMatrix kernel = unknowns == 0 ? IntMatrix(0, 0) : integer_left_kernel(c);
  HomLattice h;
  h.source = m;
  h.target = n;
  for (std::size_t r = 0; r < kernel.rows(); ++r) {
    IntMatrix x(kn, km);
    for (std::size_t p = 0; p < kn; ++p)
      for (std::size_t q = 0; q < km; ++q) x(p, q) = kernel(r, p * km + q);
    h.maps.push_back(x);
  }
  std::vector<RatMatrix> action;
  for (std::size_t e = 0; e < g->order(); ++e) {
    IntMatrix le = n.lattice_action(e);
    RatMatrix a(unknowns, unknowns, Rat(0));
    for (std::size_t p = 0; p < kn; ++p)
      for (std::size_t i = 0; i < kn; ++i)
        if (le(p, i) != 0)
          for (std::size_t q = 0; q < km; ++q) a(p * km + q, i * km + q) = Rat(le(p, i));
    action.push_back(a);
  }
  h.lattice = GLattice::make(g, action, to_rat(kernel));
  return h;
}

QG evaluate_functional(const HomLattice& dual, std::size_t i, const std::vector<Rat>& source_coords) {
  const auto& g = dual.target.group();
  if (dual.target.ambient_dim() != g->order()) throw InputError("functional target is not the regular module");
  // Target lattice coordinates -> ambient coefficient table.
  return QG(g, dual.target.from_coordinates(dual.apply(i, source_coords)));
}

namespace {

// HNF of the Z-span of {h * x : h in G, x in xs}, with h acting through mats.
RatMatrix g_span(const std::vector<RatMatrix>& mats, const std::vector<std::vector<Rat>>& xs, std::size_t dim) {
  RatMatrix rows(0, dim);
  for (const auto& x : xs)
    for (const auto& a : mats) rows.append_row(times_col(a, x));
  return rows.rows() == 0 ? RatMatrix(0, dim) : lattice_span(rows);
}

}  // namespace

Presentation presentation_of(const GLattice& m, const std::vector<std::size_t>& generator_order,
                             const std::vector<std::vector<Rat>>& extra_generators) {
  const auto& g = m.group();
  const std::size_t k = m.rank();
  const std::size_t n = g->order();
  std::vector<RatMatrix> lact;
  for (std::size_t h = 0; h < n; ++h) lact.push_back(to_rat(m.lattice_action(h)));
  std::vector<std::size_t> order = generator_order;
  if (order.empty())
    for (std::size_t i = 0; i < k; ++i) order.push_back(i);
  std::vector<std::vector<Rat>> gens;
  for (const auto& x : extra_generators) {
    if (x.size() != k || !is_integral(x)) throw InputError("extra generator is not a lattice vector");
    gens.push_back(x);
  }
  const RatMatrix full = identity_rat(k);
  RatMatrix span = g_span(lact, gens, k);
  for (std::size_t idx : order) {
    if (span == full) break;
    auto e = unit_vector(k, idx);
    bool inside = false;
    if (span.rows() > 0) {
      auto c = solve_left(span, e);
      inside = c && is_integral(*c);
    }
    if (inside) continue;
    gens.push_back(e);
    span = g_span(lact, gens, k);
  }
  if (!(span == full) && k > 0) throw InputError("candidate generators do not generate the lattice");
  const std::size_t dp = gens.size();
  // Z-linear map Z[G]^{d'} -> Z^k, row (j, h) = h * x_j.
  RatMatrix phi(dp * n, k, Rat(0));
  for (std::size_t j = 0; j < dp; ++j)
    for (std::size_t h = 0; h < n; ++h) phi.set_row(j * n + h, times_col(lact[h], gens[j]));
  IntMatrix kernel = dp == 0 ? IntMatrix(0, 0) : integer_left_kernel(phi);
  // Z[G] acts on Z^{d' n} blockwise by left translation.
  std::vector<RatMatrix> block_act;
  for (std::size_t h = 0; h < n; ++h) {
    RatMatrix a(dp * n, dp * n, Rat(0));
    for (std::size_t j = 0; j < dp; ++j)
      for (std::size_t x = 0; x < n; ++x) a(j * n + g->mul(h, x), j * n + x) = 1;
    block_act.push_back(a);
  }
  const RatMatrix target = to_rat(kernel);
  std::vector<std::vector<Rat>> rels;
  RatMatrix rspan(0, dp * n);
  for (std::size_t r = 0; r < kernel.rows(); ++r) {
    if (rspan == target) break;
    auto v = target.row(r);
    bool inside = false;
    if (rspan.rows() > 0) {
      auto c = solve_left(rspan, v);
      inside = c && is_integral(*c);
    }
    if (inside) continue;
    rels.push_back(v);
    rspan = g_span(block_act, rels, dp * n);
  }
  const std::size_t d = std::max(rels.size(), dp);
  Presentation p{g, qg_matrix(g, d, dp)};
  for (std::size_t r = 0; r < rels.size(); ++r)
    for (std::size_t j = 0; j < dp; ++j)
      for (std::size_t x = 0; x < n; ++x) p.matrix(r, j)[x] = rels[r][j * n + x];
  return p;
}

IdealLattice classical_fitting_ideal(const Presentation& h, long a) {
  if (a < 0) throw InputError("Fitting index must be nonnegative");
  const auto& g = h.group;
  if (!g->is_abelian()) throw UnsupportedError("classical Fitting ideal needs a commutative group ring");
  const long dp = static_cast<long>(h.generators()), d = static_cast<long>(h.relations());
  const long k = dp - a;
  if (k <= 0) return IdealLattice::unit(g);
  if (k > d) return IdealLattice::zero(g);
  std::vector<QG> minors;
  for (const auto& rows : subsets(static_cast<std::size_t>(d), static_cast<std::size_t>(k)))
    for (const auto& cols : subsets(static_cast<std::size_t>(dp), static_cast<std::size_t>(k))) {
      QGMatrix sub = qg_matrix(g, rows.size(), cols.size());
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) sub(i, j) = h.matrix(rows[i], cols[j]);
      QG det = ring_determinant(sub);
      if (!det.is_zero()) minors.push_back(det);
    }
  return IdealLattice::generated_by(g, minors);
}

IdealLattice minor_fitting_invariant(const QGMatrix& m, long a, const MinorBudget& budget, const WedderburnData* wd) {
  if (a < 0) throw InputError("Fitting index must be nonnegative");
  const std::size_t d = m.rows(), dp = m.cols();
  if (d < dp) throw InputError("presentation matrix needs at least as many rows as columns");
  if (dp == 0) throw InputError("presentation matrix without columns");
  const auto& g = m(0, 0).group();
  if (!g->is_abelian() && !wd) throw UnsupportedError("non-commutative Fitting invariant needs Wedderburn data");
  const std::size_t ge = std::max<std::size_t>(1, std::min(budget.group_elements, g->order()));
  const std::size_t tmax = std::min<std::size_t>(static_cast<std::size_t>(a), dp);
  const auto row_sets = subsets(d, dp);
  std::vector<QG> norms;
  for (std::size_t t = 0; t <= tmax; ++t) {
    for (const auto& cols : subsets(dp, t)) {
      // Functional choices: (k, group element) per replaced column.
      const std::size_t choices = d * ge;
      std::vector<std::size_t> pick(t, 0);
      while (true) {
        QGMatrix mj = m;
        for (std::size_t s = 0; s < t; ++s) {
          std::size_t krow = pick[s] / ge, elt = pick[s] % ge;
          for (std::size_t i = 0; i < d; ++i) mj(i, cols[s]) = i == krow ? qg_basis(g, elt) : qg_zero(g);
        }
        for (const auto& rows : row_sets) {
          QGMatrix sq = qg_matrix(g, dp, dp);
          for (std::size_t i = 0; i < dp; ++i)
            for (std::size_t j = 0; j < dp; ++j) sq(i, j) = mj(rows[i], j);
          QG n = reduced_norm(sq, wd);
          if (!n.is_zero()) norms.push_back(n);
        }
        std::size_t s = 0;
        while (s < t && pick[s] == choices - 1) pick[s++] = 0;
        if (s == t) break;
        ++pick[s];
      }
    }
  }
  if (g->is_abelian()) return IdealLattice::generated_by(g, norms);
  auto xi = whitehead_sublattice(g, wd, budget.whitehead);
  std::vector<QG> prods;
  for (const auto& w : xi.elements())
    for (const auto& n : norms) prods.push_back(w * n);
  return IdealLattice::z_span(g, prods);
}

WedgeCoordinates::WedgeCoordinates(const GLattice& m, std::size_t r) : r_(r) {
  if (!m.group()->is_abelian()) throw UnsupportedError("exterior powers need a commutative group ring");
  dual_ = hom_lattice(m, GLattice::regular(m.group()));
  tuples_ = subsets(dual_.maps.size(), r);
}

std::size_t WedgeCoordinates::ambient_dim() const { return tuples_.size() * dual_.source.group()->order(); }

std::vector<Rat> WedgeCoordinates::wedge(const std::vector<std::vector<Rat>>& vectors) const {
  if (vectors.size() != r_) throw InputError("wedge needs exactly r vectors");
  const auto& g = dual_.source.group();
  // values[i][j] = phi_i(m_j)
  std::vector<std::vector<QG>> values(dual_.maps.size());
  for (std::size_t i = 0; i < dual_.maps.size(); ++i)
    for (const auto& v : vectors) values[i].push_back(evaluate_functional(dual_, i, v));
  std::vector<Rat> out;
  out.reserve(ambient_dim());
  for (const auto& tup : tuples_) {
    QG det = qg_one(g);
    if (r_ > 0) {
      QGMatrix mat = qg_matrix(g, r_, r_);
      for (std::size_t a = 0; a < r_; ++a)
        for (std::size_t b = 0; b < r_; ++b) mat(a, b) = values[tup[a]][b];
      det = ring_determinant(mat);
    }
    out.insert(out.end(), det.coeffs().begin(), det.coeffs().end());
  }
  return out;
}

QG WedgeCoordinates::component(const std::vector<Rat>& coords, std::size_t t) const {
  const auto& g = dual_.source.group();
  const std::size_t n = g->order();
  return QG(g, std::vector<Rat>(coords.begin() + static_cast<long>(t * n), coords.begin() + static_cast<long>((t + 1) * n)));
}

std::vector<RatMatrix> WedgeCoordinates::action() const {
  const auto& g = dual_.source.group();
  const std::size_t n = g->order(), dim = ambient_dim();
  std::vector<RatMatrix> out;
  for (std::size_t h = 0; h < n; ++h) {
    RatMatrix a(dim, dim, Rat(0));
    for (std::size_t t = 0; t < tuples_.size(); ++t)
      for (std::size_t x = 0; x < n; ++x) a(t * n + g->mul(h, x), t * n + x) = 1;
    out.push_back(a);
  }
  return out;
}

GLattice exterior_power(const WedgeCoordinates& w) {
  const auto& m = w.module();
  const std::size_t k = m.rank();
  RatMatrix gens(0, w.ambient_dim());
  if (w.ambient_dim() > 0)
    for (const auto& j : subsets(k, w.r())) {
      std::vector<std::vector<Rat>> vs;
      for (auto idx : j) vs.push_back(unit_vector(k, idx));
      gens.append_row(w.wedge(vs));
    }
  return GLattice::spanned(m.group(), w.action(), gens);
}

GLattice rubin_lattice(const WedgeCoordinates& w) {
  GLattice ext = exterior_power(w);
  if (ext.rank() == 0) return ext;
  IntMatrix sat = saturate(to_int(ext.basis()));
  return GLattice::make(ext.group(), w.action(), to_rat(sat));
}

GLattice exterior_power(const GLattice& m, std::size_t r) { return exterior_power(WedgeCoordinates(m, r)); }
GLattice rubin_lattice(const GLattice& m, std::size_t r) { return rubin_lattice(WedgeCoordinates(m, r)); }

QG wedge_pairing(const std::vector<QG>& values, std::size_t r) {
  if (values.size() != r * r) throw InputError("pairing needs an r x r table");
  if (r == 0) throw InputError("empty pairing needs a group");
  const auto& g = values[0].group();
  QGMatrix mat = qg_matrix(g, r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) mat(i, j) = values[i * r + j];
  return ring_determinant(mat);
}

QG wedge_pairing(const HomLattice& dual, const std::vector<std::size_t>& phis,
                 const std::vector<std::vector<Rat>>& vectors) {
  const std::size_t r = phis.size();
  if (vectors.size() != r) throw InputError("pairing needs as many functionals as vectors");
  if (r == 0) return qg_one(dual.target.group());
  std::vector<QG> vals;
  for (auto i : phis)
    for (const auto& v : vectors) vals.push_back(evaluate_functional(dual, i, v));
  return wedge_pairing(vals, r);
}

std::vector<Int> quotient_invariants(const RatMatrix& l1, const RatMatrix& l2) {
  if (l1.cols() != l2.cols()) throw InputError("lattices live in different ambient spaces");
  if (l1.rows() != l2.rows()) throw InputError("sublattice has infinite index");
  RowSpaceSolver solver(l1);
  IntMatrix coords(l2.rows(), l1.rows());
  for (std::size_t i = 0; i < l2.rows(); ++i) {
    auto c = solver.solve(l2.row(i));
    if (!c || !is_integral(*c)) throw ContainmentError("second lattice is not contained in the first", l2.row(i));
    for (std::size_t j = 0; j < c->size(); ++j) coords(i, j) = (*c)[j].get_num();
  }
  if (coords.rows() == 0) return {};
  auto s = snf(coords);
  std::vector<Int> out;
  for (const auto& d : s.diagonal) {
    if (d == 0) throw InputError("sublattice has infinite index");
    if (d != 1) out.push_back(d);
  }
  return out;
}

std::vector<Int> quotient_invariants(const GLattice& l1, const GLattice& l2) {
  return quotient_invariants(l1.basis(), l2.basis());
}

FiniteGModule::FiniteGModule(GroupPtr g, std::vector<Int> invariants,
                             std::vector<std::pair<std::size_t, IntMatrix>> generator_action)
    : group_(std::move(g)), invariants_(std::move(invariants)) {
  const std::size_t n = invariants_.size();
  for (const auto& d : invariants_)
    if (d <= 0) throw InputError("finite module invariants must be positive");
  auto reduce = [&](IntMatrix a) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = mod(a(i, j), invariants_[i]);
    return a;
  };
  for (const auto& [s, a] : generator_action) {
    if (a.rows() != n || a.cols() != n) throw InputError("finite module action matrix has the wrong size");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (mod(a(i, j) * invariants_[j], invariants_[i]) != 0)
          throw InputError("finite module action is not well defined modulo the invariants");
  }
  action_.assign(group_->order(), IntMatrix());
  std::vector<bool> seen(group_->order(), false);
  action_[0] = identity_int(n);
  seen[0] = true;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (const auto& [s, a] : generator_action) {
      std::size_t y = group_->mul(x, s);
      IntMatrix m = reduce(action_[x] * a);
      if (!seen[y]) {
        seen[y] = true;
        action_[y] = m;
        queue.push_back(y);
      } else if (!(action_[y] == m)) {
        throw InputError("finite module action does not satisfy the group relations");
      }
    }
  }
  for (bool b : seen)
    if (!b) throw InputError("finite module action is not given on a generating set");
}

FiniteGModule FiniteGModule::trivial(const GroupPtr& g) {
  std::vector<std::pair<std::size_t, IntMatrix>> acts;
  for (auto s : g->generators()) acts.emplace_back(s, IntMatrix(0, 0));
  return FiniteGModule(g, {}, acts);
}

Int FiniteGModule::order() const {
  Int o = 1;
  for (const auto& d : invariants_) o *= d;
  return o;
}

bool annihilates(const QG& x, const FiniteGModule& f) {
  if (!is_integral(x)) throw InputError("annihilator candidate must have integer coefficients");
  if (x.group() != f.group()) throw InputError("element and module over different groups");
  const std::size_t n = f.invariants().size();
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      Int s = 0;
      for (std::size_t h = 0; h < f.group()->order(); ++h)
        if (x[h] != 0) s += x[h].get_num() * f.action(h)(i, j);
      if (mod(s, f.invariants()[i]) != 0) return false;
    }
  return true;
}

}  // namespace cyclostark
