#pragma once

// Hand-rolled random generators for the property suites. Seeds are fixed per
// test so failures reproduce.

#include <cstdint>
#include <random>
#include <vector>

#include "cyclostark/lattice.hpp"

namespace gen {

using namespace cyclostark;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
  bool coin() { return uniform(0, 1) == 1; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<long>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 eng_;
};

inline const std::vector<std::vector<long>>& abelian_shapes() {
  static const std::vector<std::vector<long>> s = {{}, {2}, {3}, {4}, {2, 2}, {5}, {6}, {2, 4}, {7}, {8}, {2, 2, 2}};
  return s;
}

// Abelian group of order at most max_order.
inline GroupPtr small_abelian(Rng& r, long max_order) {
  std::vector<std::vector<long>> ok;
  for (const auto& s : abelian_shapes()) {
    long n = 1;
    for (long d : s) n *= d;
    if (n <= max_order) ok.push_back(s);
  }
  return FiniteGroup::abelian(r.pick(ok));
}

inline QG small_qg(Rng& r, const GroupPtr& g, long h, long sparsity = 2) {
  QG x = qg_zero(g);
  for (std::size_t k = 0; k < g->order(); ++k)
    if (r.uniform(0, sparsity) == 0) x[k] = r.uniform(-h, h);
  return x;
}

inline QG small_rational_qg(Rng& r, const GroupPtr& g, long h) {
  QG x = qg_zero(g);
  for (std::size_t k = 0; k < g->order(); ++k) x[k] = Rat(r.uniform(-h, h), r.uniform(1, 3));
  for (std::size_t k = 0; k < g->order(); ++k) x[k].canonicalize();
  return x;
}

inline QGMatrix random_matrix(Rng& r, const GroupPtr& g, std::size_t d, std::size_t dp, long h, long sparsity = 2) {
  QGMatrix m = qg_matrix(g, d, dp);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < dp; ++j) m(i, j) = small_qg(r, g, h, sparsity);
  return m;
}

inline RatMatrix random_int_matrix(Rng& r, std::size_t rows, std::size_t cols, long h) {
  RatMatrix m(rows, cols, Rat(0));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = r.uniform(-h, h);
  return m;
}

// Product of random elementary integer row operations.
inline RatMatrix unimodular(Rng& r, std::size_t n, int steps) {
  RatMatrix u = identity_rat(n);
  if (n < 2) return u;
  for (int s = 0; s < steps; ++s) {
    std::size_t i = static_cast<std::size_t>(r.uniform(0, static_cast<long>(n) - 1));
    std::size_t j = static_cast<std::size_t>(r.uniform(0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    long c = r.uniform(-2, 2);
    for (std::size_t k = 0; k < n; ++k) u(i, k) += c * u(j, k);
    if (r.uniform(0, 4) == 0) u.swap_rows(i, j);
  }
  return u;
}

// A new presentation of the same module: invertible row and column moves
// over Z[G], a redundant generator and a redundant relation.
inline QGMatrix remix_presentation(Rng& r, const QGMatrix& p, int steps) {
  const auto& g = p(0, 0).group();
  QGMatrix m = p;
  const std::size_t d = m.rows(), dp = m.cols();
  for (int s = 0; s < steps; ++s) {
    const bool rows = r.coin();
    const std::size_t n = rows ? d : dp;
    if (n < 2) continue;
    std::size_t i = static_cast<std::size_t>(r.uniform(0, static_cast<long>(n) - 1));
    std::size_t j = static_cast<std::size_t>(r.uniform(0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    QG lambda = small_qg(r, g, 1);
    QG unit = qg_basis(g, static_cast<std::size_t>(r.uniform(0, static_cast<long>(g->order()) - 1)));
    if (r.coin()) unit = -unit;
    if (rows) {
      for (std::size_t k = 0; k < dp; ++k) m(i, k) = m(i, k) + lambda * m(j, k);
      for (std::size_t k = 0; k < dp; ++k) m(j, k) = unit * m(j, k);
    } else {
      for (std::size_t k = 0; k < d; ++k) m(k, i) = m(k, i) + m(k, j) * lambda;
      for (std::size_t k = 0; k < d; ++k) m(k, j) = m(k, j) * unit;
    }
  }
  // Redundant generator x = sum c_j e_j: new relation x - sum c_j e_j.
  QGMatrix out = qg_matrix(g, d + 2, dp + 1);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < dp; ++j) out(i, j) = m(i, j);
  for (std::size_t j = 0; j < dp; ++j) out(d, j) = -small_qg(r, g, 1);
  out(d, dp) = qg_one(g);
  // Redundant relation: a combination of existing rows.
  QG c0 = small_qg(r, g, 1), c1 = small_qg(r, g, 1);
  for (std::size_t j = 0; j <= dp; ++j) out(d + 1, j) = c0 * out(0, j) + c1 * out(d, j);
  return out;
}

}  // namespace gen
