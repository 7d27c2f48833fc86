#pragma once

#include <memory>
#include <vector>

#include "cyclostark/arith.hpp"
#include "cyclostark/real.hpp"

namespace cyclostark {

// Q(zeta_m) = Q[x]/Phi_m(x).
class CyclotomicField {
 public:
  static std::shared_ptr<const CyclotomicField> get(long m);

  long conductor() const { return m_; }
  std::size_t degree() const { return degree_; }
  const std::vector<Int>& cyclotomic_polynomial() const { return phi_; }
  // zeta^j reduced to the power basis, 0 <= j < m.
  const std::vector<Int>& zeta_power(long j) const { return powers_[static_cast<std::size_t>(mod_long(j, m_))]; }
  const std::vector<long>& units() const { return units_; }

 private:
  explicit CyclotomicField(long m);
  long m_;
  std::size_t degree_;
  std::vector<Int> phi_;
  std::vector<std::vector<Int>> powers_;
  std::vector<long> units_;
};

using FieldPtr = std::shared_ptr<const CyclotomicField>;

std::vector<Int> cyclotomic_polynomial(long m);

// Element of Q(zeta_m): integer numerators over the power basis and a
// positive common denominator, kept in lowest terms.
class Cyclotomic {
 public:
  Cyclotomic() = default;
  Cyclotomic(FieldPtr field, const Rat& value);
  static Cyclotomic from_coefficients(FieldPtr field, const std::vector<Rat>& coeffs);
  static Cyclotomic zeta(FieldPtr field, long j);
  static Cyclotomic zero(FieldPtr field) { return Cyclotomic(std::move(field), Rat(0)); }
  static Cyclotomic one(FieldPtr field) { return Cyclotomic(std::move(field), Rat(1)); }

  const FieldPtr& field() const { return field_; }
  std::vector<Rat> coefficients() const;
  const std::vector<Int>& numerators() const { return num_; }
  const Int& denominator() const { return den_; }

  bool is_zero() const;
  bool is_rational() const;
  Rat rational_value() const;  // throws unless is_rational()

  Cyclotomic operator+(const Cyclotomic& o) const;
  Cyclotomic operator-(const Cyclotomic& o) const;
  Cyclotomic operator-() const;
  Cyclotomic operator*(const Cyclotomic& o) const;
  Cyclotomic operator*(const Rat& q) const;
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
  bool operator==(const Cyclotomic& o) const;
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  // sigma_a: zeta -> zeta^a, gcd(a, m) = 1.
  Cyclotomic galois(long a) const;
  Cyclotomic pow(long k) const;
  Cyclotomic inverse() const;
  Rat norm() const;  // N_{Q(zeta_m)/Q}

  // Value under zeta -> exp(2 pi i a / m).
  Complex evaluate(long a) const;

 private:
  void normalize();
  FieldPtr field_;
  std::vector<Int> num_;
  Int den_ = 1;
};

}  // namespace cyclostark
