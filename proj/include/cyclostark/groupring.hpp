#pragma once

#include <string>
#include <vector>

#include "cyclostark/arith.hpp"
#include "cyclostark/cyclotomic.hpp"
#include "cyclostark/group.hpp"
#include "cyclostark/real.hpp"

namespace cyclostark {

inline Rat zero_like(const Rat&) { return Rat(0); }
inline Real zero_like(const Real&) { return Real(0); }
inline Cyclotomic zero_like(const Cyclotomic& x) { return Cyclotomic::zero(x.field()); }
inline bool coeff_is_zero(const Rat& x) { return x == 0; }
inline bool coeff_is_zero(const Real& x) { return x == 0; }
inline bool coeff_is_zero(const Cyclotomic& x) { return x.is_zero(); }

// sum_g c_g g in K[G], dense over the element indices of the group.
template <class T>
class GroupRingElement {
 public:
  GroupRingElement() = default;
  GroupRingElement(GroupPtr group, std::vector<T> coeffs) : group_(std::move(group)), c_(std::move(coeffs)) {
    if (!group_ || c_.size() != group_->order()) throw InputError("coefficient table does not match the group order");
  }
  static GroupRingElement zero(const GroupPtr& g, const T& proto) {
    return GroupRingElement(g, std::vector<T>(g->order(), zero_like(proto)));
  }
  static GroupRingElement scalar(const GroupPtr& g, const T& s) {
    auto x = zero(g, s);
    x.c_[0] = s;
    return x;
  }
  static GroupRingElement basis(const GroupPtr& g, std::size_t elt, const T& one) {
    auto x = zero(g, one);
    x.c_.at(elt) = one;
    return x;
  }

  const GroupPtr& group() const { return group_; }
  const std::vector<T>& coeffs() const { return c_; }
  const T& operator[](std::size_t g) const { return c_[g]; }
  T& operator[](std::size_t g) { return c_[g]; }
  bool valid() const { return group_ != nullptr; }

  GroupRingElement operator+(const GroupRingElement& o) const {
    check(o);
    GroupRingElement r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
  }
  GroupRingElement operator-(const GroupRingElement& o) const {
    check(o);
    GroupRingElement r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
  }
  GroupRingElement operator-() const {
    GroupRingElement r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  GroupRingElement operator*(const GroupRingElement& o) const {
    check(o);
    GroupRingElement r = zero(group_, c_[0]);
    for (std::size_t a = 0; a < c_.size(); ++a) {
      if (coeff_is_zero(c_[a])) continue;
      for (std::size_t b = 0; b < c_.size(); ++b) {
        if (coeff_is_zero(o.c_[b])) continue;
        r.c_[group_->mul(a, b)] += c_[a] * o.c_[b];
      }
    }
    return r;
  }
  GroupRingElement scaled(const T& s) const {
    GroupRingElement r = *this;
    for (auto& x : r.c_) x = x * s;
    return r;
  }
  GroupRingElement& operator+=(const GroupRingElement& o) { return *this = *this + o; }
  GroupRingElement& operator-=(const GroupRingElement& o) { return *this = *this - o; }
  GroupRingElement& operator*=(const GroupRingElement& o) { return *this = *this * o; }
  bool operator==(const GroupRingElement& o) const { return group_ == o.group_ && c_ == o.c_; }
  bool operator!=(const GroupRingElement& o) const { return !(*this == o); }

  // g * x
  GroupRingElement left_translate(std::size_t g) const {
    GroupRingElement r = zero(group_, c_[0]);
    for (std::size_t a = 0; a < c_.size(); ++a) r.c_[group_->mul(g, a)] = c_[a];
    return r;
  }
  // sum c_g g^{-1}
  GroupRingElement sharp() const {
    GroupRingElement r = zero(group_, c_[0]);
    for (std::size_t a = 0; a < c_.size(); ++a) r.c_[group_->inv(a)] = c_[a];
    return r;
  }
  T augmentation() const {
    T s = zero_like(c_[0]);
    for (const auto& x : c_) s += x;
    return s;
  }
  bool is_zero() const {
    for (const auto& x : c_)
      if (!coeff_is_zero(x)) return false;
    return true;
  }

 private:
  void check(const GroupRingElement& o) const {
    if (!group_ || group_ != o.group_) throw InputError("group ring elements over different groups");
  }
  GroupPtr group_;
  std::vector<T> c_;
};

using QG = GroupRingElement<Rat>;
using CG = GroupRingElement<Cyclotomic>;
using RG = GroupRingElement<Real>;
using QGMatrix = Matrix<QG>;

QG qg_zero(const GroupPtr& g);
QG qg_one(const GroupPtr& g);
QG qg_basis(const GroupPtr& g, std::size_t elt);
QG qg_from_residues(const GroupPtr& g, const std::vector<std::pair<long, Rat>>& terms);
bool is_integral(const QG& x);
std::string to_json_string(const QG& x);  // for diagnostics

// chi(g) as an element of Q(zeta_e), e = exponent of G.
Cyclotomic character_value(const Character& chi, std::size_t g);
Cyclotomic character_of(const Character& chi, const QG& x);  // chi extended linearly
std::vector<Character> galois_orbit(const Character& chi);

// e_chi = |G|^{-1} sum_g chi(g^{-1}) g.
CG idempotent(const Character& chi);
// Sum of e_psi over the Galois orbit of chi; rational.
QG rational_idempotent(const Character& chi);
// sum_chi v_chi e_chi; the result must be rational.
QG from_character_values(const GroupPtr& g, const std::vector<Character>& chars, const std::vector<Cyclotomic>& values);
RG to_real(const QG& x);

// Determinant over the commutative ring Q[G].
QG ring_determinant(const QGMatrix& m);
Cyclotomic cyclotomic_determinant(Matrix<Cyclotomic> m);

class WedderburnData;
// Reduced norm of a square matrix over Q[G]. Abelian groups go through
// characters; non-abelian groups need Wedderburn data.
QG reduced_norm(const QGMatrix& m, const WedderburnData* wd = nullptr);

QGMatrix qg_matrix(const GroupPtr& g, std::size_t rows, std::size_t cols);
QGMatrix transpose(const QGMatrix& m);
QGMatrix multiply(const QGMatrix& a, const QGMatrix& b);

// A Z-lattice inside Q[G] (coordinates = coefficient tables).
class IdealLattice {
 public:
  IdealLattice() = default;
  // Z-span of {g * x : g in G, x in gens}.
  static IdealLattice generated_by(const GroupPtr& g, const std::vector<QG>& gens);
  // Z-span of gens, no closure.
  static IdealLattice z_span(const GroupPtr& g, const std::vector<QG>& gens);
  static IdealLattice unit(const GroupPtr& g);
  static IdealLattice zero(const GroupPtr& g);

  const GroupPtr& group() const { return group_; }
  const RatMatrix& basis() const { return basis_; }
  std::size_t rank() const { return basis_.rows(); }
  std::vector<QG> elements() const;
  bool contains(const QG& x) const;
  bool contains(const IdealLattice& other) const;
  bool operator==(const IdealLattice& o) const { return basis_ == o.basis_; }
  bool is_integral() const;
  // Closed under multiplication by G on the left.
  bool is_ideal() const;

 private:
  GroupPtr group_;
  RatMatrix basis_;
};

}  // namespace cyclostark
