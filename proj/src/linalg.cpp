#include "cyclostark/linalg.hpp"

#include <string>

namespace cyclostark {

namespace {

using Rows = std::vector<std::vector<Int>>;

Rows to_rows(const IntMatrix& m) {
  Rows a(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) a[i] = m.row(i);
  return a;
}

IntMatrix from_rows(const Rows& a, std::size_t count, std::size_t cols) {
  IntMatrix out(count, cols);
  for (std::size_t i = 0; i < count; ++i) out.set_row(i, a[i]);
  return out;
}

void sub_multiple(std::vector<Int>& target, const std::vector<Int>& src, const Int& q,
                  std::size_t from) {
  for (std::size_t j = from; j < target.size(); ++j)
    if (src[j] != 0) target[j] -= q * src[j];
}

}  // namespace

IntMatrix hnf_rows(IntMatrix gens) {
  const std::size_t m = gens.rows(), n = gens.cols();
  Rows a = to_rows(gens);
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    bool found = false;
    while (true) {
      std::size_t p = m;
      for (std::size_t i = r; i < m; ++i)
        if (a[i][c] != 0 && (p == m || abs(a[i][c]) < abs(a[p][c]))) p = i;
      if (p == m) break;
      found = true;
      std::swap(a[r], a[p]);
      bool done = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (a[i][c] == 0) continue;
        Int q = floor_div(a[i][c], a[r][c]);
        sub_multiple(a[i], a[r], q, c);
        if (a[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (!found) continue;
    if (a[r][c] < 0)
      for (std::size_t j = c; j < n; ++j) a[r][j] = -a[r][j];
    for (std::size_t i = 0; i < r; ++i) {
      Int q = floor_div(a[i][c], a[r][c]);
      if (q != 0) sub_multiple(a[i], a[r], q, c);
    }
    ++r;
  }
  return from_rows(a, r, n);
}

RatMatrix clear_denominators(const RatMatrix& m, Int& denominator) {
  denominator = 1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) denominator = lcm(denominator, m(i, j).get_den());
  RatMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j) * denominator;
  return out;
}

bool is_integral(const std::vector<Rat>& v) {
  for (const auto& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

RatMatrix lattice_span(const RatMatrix& gens) {
  Int d;
  RatMatrix scaled = clear_denominators(gens, d);
  IntMatrix h = hnf_rows(to_int(scaled));
  RatMatrix out = to_rat(h);
  for (std::size_t i = 0; i < out.rows(); ++i)
    for (std::size_t j = 0; j < out.cols(); ++j) out(i, j) /= d;
  return out;
}

RatMatrix hnf(const RatMatrix& basis) {
  RatMatrix probe(0, basis.cols());
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    probe.append_row(basis.row(i));
    if (rank(probe) != i + 1)
      throw InputError("basis row " + std::to_string(i) + " is linearly dependent on earlier rows");
  }
  return lattice_span(basis);
}

std::vector<std::size_t> rref(RatMatrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = a.rows();
    for (std::size_t i = r; i < a.rows(); ++i)
      if (a(i, c) != 0) {
        p = i;
        break;
      }
    if (p == a.rows()) continue;
    a.swap_rows(r, p);
    Rat inv = 1 / a(r, c);
    for (std::size_t j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rat f = a(i, c);
      for (std::size_t j = c; j < a.cols(); ++j)
        if (a(r, j) != 0) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  return rref(a).size();
}

Rat determinant(RatMatrix a) {
  if (a.rows() != a.cols()) throw InputError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = n;
    for (std::size_t i = c; i < n; ++i)
      if (a(i, c) != 0) {
        p = i;
        break;
      }
    if (p == n) return 0;
    if (p != c) {
      a.swap_rows(p, c);
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c) == 0) continue;
      Rat f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

RatMatrix left_kernel(const RatMatrix& a) {
  RatMatrix t = a.transpose();
  auto pivots = rref(t);
  const std::size_t k = a.rows();
  std::vector<bool> is_pivot(k, false);
  for (auto p : pivots) is_pivot[p] = true;
  RatMatrix out(0, k);
  for (std::size_t f = 0; f < k; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rat> v(k, Rat(0));
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -t(i, f);
    out.append_row(v);
  }
  return out;
}

IntMatrix saturate(const IntMatrix& b) {
  IntMatrix h = hnf_rows(b);
  const std::size_t rho = h.rows(), n = h.cols();
  if (rho == 0) return h;
  std::vector<std::size_t> pivots;
  std::vector<bool> is_pivot(n, false);
  for (std::size_t i = 0; i < rho; ++i) {
    std::size_t c = 0;
    while (h(i, c) == 0) ++c;
    pivots.push_back(c);
    is_pivot[c] = true;
  }
  // R = B_P^{-1} H by back substitution (B_P is upper triangular).
  RatMatrix r(rho, n, Rat(0));
  for (std::size_t ii = rho; ii-- > 0;) {
    for (std::size_t j = 0; j < n; ++j) {
      Rat s = h(ii, j);
      for (std::size_t k = ii + 1; k < rho; ++k)
        if (h(ii, pivots[k]) != 0) s -= Rat(h(ii, pivots[k])) * r(k, j);
      r(ii, j) = s / Rat(h(ii, pivots[ii]));
    }
  }
  Int delta;
  RatMatrix nr = clear_denominators(r, delta);
  IntMatrix nmat = to_int(nr);
  IntMatrix y = identity_int(rho);
  for (std::size_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    std::vector<Int> v(rho);
    bool all_zero = true;
    for (std::size_t k = 0; k < rho; ++k) {
      Int s = 0;
      for (std::size_t t = 0; t < rho; ++t) s += y(k, t) * nmat(t, j);
      v[k] = mod(s, delta);
      if (v[k] != 0) all_zero = false;
    }
    if (all_zero) continue;
    IntMatrix aug(rho + 1, rho + 1, Int(0));
    for (std::size_t k = 0; k < rho; ++k) {
      aug(k, 0) = v[k];
      aug(k, k + 1) = 1;
    }
    aug(rho, 0) = delta;
    IntMatrix ah = hnf_rows(aug);
    IntMatrix kern(rho, rho);
    for (std::size_t k = 0; k < rho; ++k)
      for (std::size_t t = 0; t < rho; ++t) kern(k, t) = ah(k + 1, t + 1);
    IntMatrix ny = kern * y;
    IntMatrix stacked(2 * rho, rho, Int(0));
    for (std::size_t k = 0; k < rho; ++k)
      for (std::size_t t = 0; t < rho; ++t) stacked(k, t) = ny(k, t);
    for (std::size_t k = 0; k < rho; ++k) stacked(rho + k, k) = delta;
    y = hnf_rows(stacked);
  }
  RatMatrix sat = to_rat(y) * r;
  return hnf_rows(to_int(sat));
}

IntMatrix integer_left_kernel(const RatMatrix& a) {
  RatMatrix k = left_kernel(a);
  IntMatrix scaled(k.rows(), k.cols());
  for (std::size_t i = 0; i < k.rows(); ++i) {
    Int d = 1;
    for (std::size_t j = 0; j < k.cols(); ++j) d = lcm(d, k(i, j).get_den());
    for (std::size_t j = 0; j < k.cols(); ++j) {
      Rat x = k(i, j) * d;
      scaled(i, j) = x.get_num();
    }
  }
  if (k.rows() == 0) return IntMatrix(0, a.rows());
  return saturate(scaled);
}

RowSpaceSolver::RowSpaceSolver(const RatMatrix& basis) : n_(basis.rows()), dim_(basis.cols()) {
  reduced_ = RatMatrix(n_, dim_ + n_, Rat(0));
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < dim_; ++j) reduced_(i, j) = basis(i, j);
    reduced_(i, dim_ + i) = 1;
  }
  // Only eliminate on the basis part.
  std::size_t r = 0;
  for (std::size_t c = 0; c < dim_ && r < n_; ++c) {
    std::size_t p = n_;
    for (std::size_t i = r; i < n_; ++i)
      if (reduced_(i, c) != 0) {
        p = i;
        break;
      }
    if (p == n_) continue;
    reduced_.swap_rows(r, p);
    Rat inv = 1 / reduced_(r, c);
    for (std::size_t j = 0; j < dim_ + n_; ++j) reduced_(r, j) *= inv;
    for (std::size_t i = 0; i < n_; ++i) {
      if (i == r || reduced_(i, c) == 0) continue;
      Rat f = reduced_(i, c);
      for (std::size_t j = 0; j < dim_ + n_; ++j)
        if (reduced_(r, j) != 0) reduced_(i, j) -= f * reduced_(r, j);
    }
    pivots_.push_back(c);
    ++r;
  }
  rank_ = r;
}

std::optional<std::vector<Rat>> RowSpaceSolver::solve(const std::vector<Rat>& v) const {
  if (v.size() != dim_) throw InputError("vector length does not match the ambient dimension");
  std::vector<Rat> rest = v;
  std::vector<Rat> x(n_, Rat(0));
  for (std::size_t i = 0; i < rank_; ++i) {
    Rat c = rest[pivots_[i]];
    if (c == 0) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      if (reduced_(i, j) != 0) rest[j] -= c * reduced_(i, j);
    for (std::size_t k = 0; k < n_; ++k)
      if (reduced_(i, dim_ + k) != 0) x[k] += c * reduced_(i, dim_ + k);
  }
  for (const auto& e : rest)
    if (e != 0) return std::nullopt;
  return x;
}

std::optional<std::vector<Rat>> solve_left(const RatMatrix& b, const std::vector<Rat>& v) {
  return RowSpaceSolver(b).solve(v);
}

SmithForm snf(const IntMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  IntMatrix a = m;
  IntMatrix u = identity_int(r), v = identity_int(c);
  auto row_sub = [](IntMatrix& x, std::size_t target, std::size_t src, const Int& q) {
    for (std::size_t j = 0; j < x.cols(); ++j) x(target, j) -= q * x(src, j);
  };
  auto col_sub = [](IntMatrix& x, std::size_t target, std::size_t src, const Int& q) {
    for (std::size_t i = 0; i < x.rows(); ++i) x(i, target) -= q * x(i, src);
  };
  auto col_swap = [](IntMatrix& x, std::size_t p, std::size_t q) {
    if (p == q) return;
    for (std::size_t i = 0; i < x.rows(); ++i) std::swap(x(i, p), x(i, q));
  };
  const std::size_t steps = std::min(r, c);
  std::vector<Int> diag(steps, Int(0));
  for (std::size_t t = 0; t < steps; ++t) {
    bool any = true;
    while (true) {
      std::size_t pi = r, pj = c;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (a(i, j) != 0 && (pi == r || abs(a(i, j)) < abs(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == r) {
        any = false;
        break;
      }
      a.swap_rows(t, pi);
      u.swap_rows(t, pi);
      col_swap(a, t, pj);
      col_swap(v, t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (a(i, t) == 0) continue;
        Int q = floor_div(a(i, t), a(t, t));
        row_sub(a, i, t, q);
        row_sub(u, i, t, q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (a(t, j) == 0) continue;
        Int q = floor_div(a(t, j), a(t, t));
        col_sub(a, j, t, q);
        col_sub(v, j, t, q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      bool divisible = true;
      for (std::size_t i = t + 1; i < r && divisible; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (a(i, j) % a(t, t) != 0) {
            row_sub(a, t, i, Int(-1));
            row_sub(u, t, i, Int(-1));
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (!any) break;
    if (a(t, t) < 0) {
      for (std::size_t j = 0; j < c; ++j) a(t, j) = -a(t, j);
      for (std::size_t j = 0; j < r; ++j) u(t, j) = -u(t, j);
    }
    diag[t] = a(t, t);
  }
  return SmithForm{diag, u, v};
}

}  // namespace cyclostark
