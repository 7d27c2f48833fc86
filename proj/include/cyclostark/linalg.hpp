#pragma once

#include <optional>
#include <vector>

#include "cyclostark/arith.hpp"

namespace cyclostark {

// Row-style Hermite normal form of the Z-span of the rows. Zero rows are
// dropped; pivots are positive and entries above a pivot lie in [0, pivot).
IntMatrix hnf_rows(IntMatrix gens);

// HNF of the Z-span of rational generators (common denominator cleared and
// restored).
RatMatrix lattice_span(const RatMatrix& gens);

// Strict HNF of a basis. Throws InputError naming the first row that depends
// on the earlier ones.
RatMatrix hnf(const RatMatrix& basis);

struct SmithForm {
  std::vector<Int> diagonal;  // d_1 | d_2 | ... (zeros last)
  IntMatrix left;             // unimodular U
  IntMatrix right;            // unimodular V, U * M * V = diag
};
SmithForm snf(const IntMatrix& m);

std::size_t rank(const RatMatrix& m);
Rat determinant(RatMatrix m);

// Reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(RatMatrix& m);

// Basis (rows) of {x : x * A = 0}.
RatMatrix left_kernel(const RatMatrix& a);

// (Q-row-span of B) intersected with Z^n, as an HNF basis.
IntMatrix saturate(const IntMatrix& b);

// HNF basis of {x in Z^rows : x * A = 0}.
IntMatrix integer_left_kernel(const RatMatrix& a);

// x with x * B = v, B of full row rank; nullopt if v is outside the span.
std::optional<std::vector<Rat>> solve_left(const RatMatrix& b, const std::vector<Rat>& v);

// Solver for repeated membership queries against a fixed row basis.
class RowSpaceSolver {
 public:
  explicit RowSpaceSolver(const RatMatrix& basis);
  std::optional<std::vector<Rat>> solve(const std::vector<Rat>& v) const;
  std::size_t rank() const { return rank_; }

 private:
  RatMatrix reduced_;       // rref of [B | I]
  std::vector<std::size_t> pivots_;
  std::size_t n_ = 0, dim_ = 0, rank_ = 0;
};

RatMatrix clear_denominators(const RatMatrix& m, Int& denominator);
bool is_integral(const std::vector<Rat>& v);

}  // namespace cyclostark
