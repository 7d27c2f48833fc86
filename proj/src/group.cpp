#include "cyclostark/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "cyclostark/linalg.hpp"

namespace cyclostark {

namespace {

std::string coord_name(const std::vector<long>& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + ")";
}

}  // namespace

std::shared_ptr<const FiniteGroup> FiniteGroup::abelian(std::vector<long> invariant_factors) {
  std::vector<long> inv;
  for (long d : invariant_factors) {
    if (d < 1) throw InputError("invariant factors must be positive");
    if (d > 1) inv.push_back(d);
  }
  for (std::size_t i = 1; i < inv.size(); ++i)
    if (inv[i] % inv[i - 1] != 0) throw InputError("invariant factors must form a divisibility chain");
  std::size_t n = 1;
  for (long d : inv) n *= static_cast<std::size_t>(d);
  if (n > 4096) throw UnsupportedError("group too large");

  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->invariants_ = inv;
  g->abelian_ = true;
  std::vector<std::vector<long>> coords(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = i;
    for (long d : inv) {
      coords[i].push_back(static_cast<long>(r % static_cast<std::size_t>(d)));
      r /= static_cast<std::size_t>(d);
    }
  }
  g->table_.assign(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      std::size_t idx = 0, radix = 1;
      for (std::size_t k = 0; k < inv.size(); ++k) {
        idx += static_cast<std::size_t>((coords[a][k] + coords[b][k]) % inv[k]) * radix;
        radix *= static_cast<std::size_t>(inv[k]);
      }
      g->table_[a][b] = idx;
    }
  for (std::size_t i = 0; i < n; ++i) g->names_.push_back(coord_name(coords[i]));
  std::size_t radix = 1;
  for (long d : inv) {
    g->gens_.push_back(radix);
    radix *= static_cast<std::size_t>(d);
  }
  g->finish();
  return g;
}

std::shared_ptr<const FiniteGroup> FiniteGroup::from_table(std::vector<std::vector<std::size_t>> table,
                                                           std::vector<std::string> names) {
  const std::size_t n = table.size();
  if (n == 0) throw InputError("empty multiplication table");
  for (const auto& row : table) {
    if (row.size() != n) throw InputError("multiplication table is not square");
    for (auto x : row)
      if (x >= n) throw InputError("multiplication table entry out of range");
  }
  for (std::size_t a = 0; a < n; ++a)
    if (table[0][a] != a || table[a][0] != a) throw InputError("element 0 is not the identity");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw InputError("multiplication table is not associative");
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->table_ = std::move(table);
  g->names_ = std::move(names);
  if (g->names_.size() != n) {
    g->names_.clear();
    for (std::size_t i = 0; i < n; ++i) g->names_.push_back("g" + std::to_string(i));
  }
  g->abelian_ = true;
  for (std::size_t a = 0; a < n && g->abelian_; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (g->table_[a][b] != g->table_[b][a]) {
        g->abelian_ = false;
        break;
      }
  // Greedy generating set.
  std::vector<std::size_t> span{0};
  for (std::size_t a = 1; a < n && span.size() < n; ++a) {
    if (std::binary_search(span.begin(), span.end(), a)) continue;
    g->gens_.push_back(a);
    span = g->subgroup(g->gens_);
  }
  g->finish();
  return g;
}

void FiniteGroup::finish() {
  const std::size_t n = table_.size();
  inverse_.assign(n, 0);
  for (std::size_t a = 0; a < n; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < n; ++b)
      if (table_[a][b] == 0) {
        inverse_[a] = b;
        found = true;
        break;
      }
    if (!found) throw InputError("element without inverse in multiplication table");
  }
  exponent_ = 1;
  for (std::size_t a = 0; a < n; ++a) {
    long o = static_cast<long>(element_order(a));
    exponent_ = std::lcm(exponent_, o);
  }
}

std::size_t FiniteGroup::pow(std::size_t a, long k) const {
  long o = static_cast<long>(element_order(a));
  long e = mod_long(k, o);
  std::size_t r = 0;
  for (long i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

std::size_t FiniteGroup::element_order(std::size_t a) const {
  std::size_t o = 1, x = a;
  while (x != 0) {
    x = table_[x][a];
    ++o;
    if (o > table_.size()) throw InputError("element of infinite order in multiplication table");
  }
  return o;
}

const std::vector<long>& FiniteGroup::invariant_factors() const {
  if (!abelian_ || (invariants_.empty() && order() > 1))
    throw UnsupportedError("invariant factors requested for a group without abelian coordinates");
  return invariants_;
}

std::vector<long> FiniteGroup::coordinates(std::size_t g) const {
  const auto& inv = invariant_factors();
  std::vector<long> c;
  for (long d : inv) {
    c.push_back(static_cast<long>(g % static_cast<std::size_t>(d)));
    g /= static_cast<std::size_t>(d);
  }
  return c;
}

std::size_t FiniteGroup::element(const std::vector<long>& coords) const {
  const auto& inv = invariant_factors();
  if (coords.size() != inv.size()) throw InputError("coordinate tuple has the wrong length");
  std::size_t idx = 0, radix = 1;
  for (std::size_t k = 0; k < inv.size(); ++k) {
    idx += static_cast<std::size_t>(mod_long(coords[k], inv[k])) * radix;
    radix *= static_cast<std::size_t>(inv[k]);
  }
  return idx;
}

std::size_t FiniteGroup::element_of_residue(long a) const {
  if (!has_residues()) throw UnsupportedError("group has no residue labels");
  long r = mod_long(a, modulus_);
  long e = residue_to_element_[static_cast<std::size_t>(r)];
  if (e < 0) throw InputError("residue " + std::to_string(a) + " is not a unit mod " + std::to_string(modulus_));
  return static_cast<std::size_t>(e);
}

std::vector<std::size_t> FiniteGroup::subgroup(const std::vector<std::size_t>& gens) const {
  std::vector<bool> seen(order(), false);
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  while (!queue.empty()) {
    std::size_t x = queue.front();
    queue.pop_front();
    for (auto s : gens) {
      std::size_t y = mul(x, s);
      if (!seen[y]) {
        seen[y] = true;
        queue.push_back(y);
      }
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < order(); ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

std::vector<std::vector<std::size_t>> FiniteGroup::cosets(const std::vector<std::size_t>& sub) const {
  std::vector<bool> used(order(), false);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t g = 0; g < order(); ++g) {
    if (used[g]) continue;
    std::vector<std::size_t> c;
    for (auto h : sub) c.push_back(mul(g, h));
    std::sort(c.begin(), c.end());
    for (auto x : c) used[x] = true;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::size_t> FiniteGroup::generators() const { return gens_; }

std::shared_ptr<const FiniteGroup> FiniteGroup::units_quotient(long m, const std::vector<long>& hgens) {
  if (m < 2) throw InputError("modulus must be at least 2");
  if (m > 100000) throw UnsupportedError("modulus too large");
  std::vector<long> units;
  for (long a = 1; a < m; ++a)
    if (gcd_long(a, m) == 1) units.push_back(a);
  if (m == 2) units = {1};
  auto closure = [m](const std::vector<long>& gens) {
    std::vector<bool> seen(static_cast<std::size_t>(m), false);
    std::deque<long> queue{1 % m};
    seen[static_cast<std::size_t>(1 % m)] = true;
    while (!queue.empty()) {
      long x = queue.front();
      queue.pop_front();
      for (long s : gens) {
        long y = mod_long(x * s, m);
        if (!seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = true;
          queue.push_back(y);
        }
      }
    }
    return seen;
  };
  for (long h : hgens)
    if (gcd_long(h, m) != 1) throw InputError("subgroup generator " + std::to_string(h) + " is not a unit mod " + std::to_string(m));
  std::vector<long> hred;
  for (long h : hgens) hred.push_back(mod_long(h, m));
  auto in_h = closure(hred);

  // Coset index of each unit.
  std::vector<long> coset_of(static_cast<std::size_t>(m), -1);
  std::vector<long> coset_rep;
  for (long a : units) {
    if (coset_of[static_cast<std::size_t>(a)] >= 0) continue;
    long idx = static_cast<long>(coset_rep.size());
    coset_rep.push_back(a);
    for (long h = 0; h < m; ++h)
      if (in_h[static_cast<std::size_t>(h)]) coset_of[static_cast<std::size_t>(mod_long(a * h, m))] = idx;
  }
  const std::size_t n = coset_rep.size();

  // Generators of the quotient, chosen greedily among residues.
  std::vector<long> gens;
  {
    std::vector<long> all = hred;
    auto span = closure(all);
    for (long a : units) {
      if (span[static_cast<std::size_t>(a)]) continue;
      gens.push_back(a);
      all.push_back(a);
      span = closure(all);
    }
  }
  const std::size_t k = gens.size();
  std::vector<std::vector<long>> vec(n);
  std::vector<bool> visited(n, false);
  IntMatrix relations(0, k);
  std::deque<long> queue{0};
  long one_coset = coset_of[static_cast<std::size_t>(1 % m)];
  vec[static_cast<std::size_t>(one_coset)] = std::vector<long>(k, 0);
  visited[static_cast<std::size_t>(one_coset)] = true;
  queue = {coset_rep[static_cast<std::size_t>(one_coset)]};
  while (!queue.empty()) {
    long x = queue.front();
    queue.pop_front();
    auto cx = static_cast<std::size_t>(coset_of[static_cast<std::size_t>(x)]);
    for (std::size_t i = 0; i < k; ++i) {
      long y = mod_long(x * gens[i], m);
      auto cy = static_cast<std::size_t>(coset_of[static_cast<std::size_t>(y)]);
      std::vector<long> v = vec[cx];
      v[i] += 1;
      if (!visited[cy]) {
        visited[cy] = true;
        vec[cy] = v;
        queue.push_back(y);
      } else {
        std::vector<Int> rel(k);
        bool zero = true;
        for (std::size_t j = 0; j < k; ++j) {
          rel[j] = v[j] - vec[cy][j];
          if (rel[j] != 0) zero = false;
        }
        if (!zero) relations.append_row(rel);
      }
    }
  }
  std::vector<long> invariants;
  std::vector<std::size_t> kept;
  IntMatrix v_mat = identity_int(k);
  if (k > 0) {
    IntMatrix rel = hnf_rows(relations);
    SmithForm s = snf(rel);
    v_mat = s.right;
    for (std::size_t i = 0; i < k; ++i) {
      Int d = i < s.diagonal.size() ? s.diagonal[i] : Int(0);
      if (d == 0) throw InputError("relation lattice is not of full rank");
      if (d != 1) {
        invariants.push_back(d.get_si());
        kept.push_back(i);
      }
    }
  }
  auto grp = abelian(invariants);
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup(*grp));
  g->modulus_ = m;
  g->residue_.assign(n, 0);
  g->residue_to_element_.assign(static_cast<std::size_t>(m), -1);
  std::vector<bool> hit(n, false);
  std::vector<std::size_t> element_of_coset(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<long> coords;
    for (std::size_t idx = 0; idx < kept.size(); ++idx) {
      Int s = 0;
      for (std::size_t j = 0; j < k; ++j) s += vec[c][j] * v_mat(j, kept[idx]);
      coords.push_back(mod(s, Int(invariants[idx])).get_si());
    }
    std::size_t e = g->element(coords);
    if (hit[e]) throw InputError("quotient coordinates are not injective");
    hit[e] = true;
    element_of_coset[c] = e;
    g->residue_[e] = coset_rep[c];
  }
  for (long a : units)
    g->residue_to_element_[static_cast<std::size_t>(a)] =
        static_cast<long>(element_of_coset[static_cast<std::size_t>(coset_of[static_cast<std::size_t>(a)])]);
  for (long h = 0; h < m; ++h)
    if (in_h[static_cast<std::size_t>(h)]) g->h_residues_.push_back(h);
  for (std::size_t e = 0; e < n; ++e) g->names_[e] = std::to_string(g->residue_[e]);
  // Identity must be the class of 1.
  if (g->residue_[0] != 1 % m) throw InputError("identity does not map to the class of 1");
  return g;
}

Character::Character(GroupPtr group, std::vector<long> coords) : group_(std::move(group)), coords_(std::move(coords)) {
  const auto& inv = group_->invariant_factors();
  if (coords_.size() != inv.size()) throw InputError("character coordinates have the wrong length");
  for (std::size_t i = 0; i < inv.size(); ++i) coords_[i] = mod_long(coords_[i], inv[i]);
}

long Character::exponent_at(std::size_t g) const {
  const auto& inv = group_->invariant_factors();
  const long e = group_->exponent();
  auto x = group_->coordinates(g);
  long s = 0;
  for (std::size_t i = 0; i < inv.size(); ++i) s = mod_long(s + coords_[i] * x[i] * (e / inv[i]), e);
  return s;
}

bool Character::is_trivial() const {
  return std::all_of(coords_.begin(), coords_.end(), [](long c) { return c == 0; });
}

Character Character::inverse() const {
  std::vector<long> c;
  for (long x : coords_) c.push_back(-x);
  return Character(group_, c);
}

Character Character::product(const Character& other) const {
  std::vector<long> c = coords_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += other.coords_[i];
  return Character(group_, c);
}

bool Character::trivial_on(const std::vector<std::size_t>& elements) const {
  return std::all_of(elements.begin(), elements.end(), [this](std::size_t g) { return exponent_at(g) == 0; });
}

std::size_t Character::order() const {
  long o = 1;
  const auto& inv = group_->invariant_factors();
  for (std::size_t i = 0; i < inv.size(); ++i) o = std::lcm(o, inv[i] / std::gcd(inv[i], coords_[i]));
  return static_cast<std::size_t>(o);
}

std::string Character::label() const { return "chi" + coord_name(coords_); }

std::vector<Character> characters_of(const GroupPtr& group) {
  std::vector<Character> out;
  const auto& inv = group->invariant_factors();
  for (std::size_t g = 0; g < group->order(); ++g) out.emplace_back(group, group->coordinates(g));
  (void)inv;
  return out;
}

}  // namespace cyclostark
