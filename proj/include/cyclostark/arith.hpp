#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cyclostark {

using Int = mpz_class;
using Rat = mpq_class;

// Malformed input: bad fixture data, inconsistent shapes, invalid parameters.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A well-formed request the implementation does not handle.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Lattice containment failed; carries the offending vector.
class ContainmentError : public std::runtime_error {
 public:
  ContainmentError(const std::string& what, std::vector<Rat> witness)
      : std::runtime_error(what), witness_(std::move(witness)) {}
  const std::vector<Rat>& witness() const { return witness_; }

 private:
  std::vector<Rat> witness_;
};

Rat parse_rational(std::string_view text);
std::string to_string(const Rat& q);  // always "p/q"
std::string to_string(const Int& z);

Int lcm(const Int& a, const Int& b);
Int floor_div(const Int& a, const Int& b);
Int mod(const Int& a, const Int& b);  // result in [0, |b|)

// Exponent of p in the integer n (n != 0).
long valuation(const Int& n, long p);
long valuation(const Rat& q, long p);

long gcd_long(long a, long b);
long mod_long(long a, long m);
long pow_mod(long a, long e, long m);
std::vector<long> prime_factors(long n);  // distinct, ascending

// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  void set_row(std::size_t i, const std::vector<T>& v) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
  }
  void append_row(const std::vector<T>& v) {
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    if (v.size() != cols_) throw InputError("row length mismatch");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

RatMatrix to_rat(const IntMatrix& m);
IntMatrix to_int(const RatMatrix& m);  // throws if a non-integer entry is present
RatMatrix identity_rat(std::size_t n);
IntMatrix identity_int(std::size_t n);

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw InputError("matrix product shape mismatch");
  Matrix<T> c(a.rows(), b.cols(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

std::vector<Rat> row_times(const std::vector<Rat>& v, const RatMatrix& m);
std::vector<Rat> times_col(const RatMatrix& m, const std::vector<Rat>& v);

}  // namespace cyclostark
