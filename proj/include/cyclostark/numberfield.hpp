#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cyclostark/cyclotomic.hpp"
#include "cyclostark/group.hpp"
#include "cyclostark/groupring.hpp"
#include "cyclostark/lattice.hpp"
#include "cyclostark/real.hpp"
#include "json.hpp"

namespace cyclostark {

// Working precision floor (decimal digits) for numerical evaluation.
constexpr unsigned kMinPrecision = 20;
constexpr unsigned kDefaultPrecision = 60;
constexpr unsigned kDefaultToleranceDigits = 30;

// L = Q(zeta_m)^H, real, with m the conductor.
class RealAbelianField {
 public:
  static std::shared_ptr<const RealAbelianField> make(long m, std::vector<long> subgroup_gens);

  long conductor() const { return m_; }
  const std::vector<long>& subgroup_generators() const { return hgens_; }
  const GroupPtr& group() const { return group_; }
  const FieldPtr& cyclotomic() const { return qzeta_; }
  std::size_t degree() const { return group_->order(); }
  bool contains(const Cyclotomic& x) const;
  // sigma_g for a group element g (any residue representative).
  Cyclotomic apply(std::size_t g, const Cyclotomic& x) const;
  Rat norm_to_q(const Cyclotomic& x) const;  // N_{L/Q}, x in L
  std::string key() const;                   // m<m>_H<g1>-<g2>

 private:
  RealAbelianField() = default;
  long m_ = 0;
  std::vector<long> hgens_;
  GroupPtr group_;
  FieldPtr qzeta_;
};

using FieldHandle = std::shared_ptr<const RealAbelianField>;

std::vector<std::size_t> decomposition_group(const RealAbelianField& field, long p);
bool is_prime(long p);

struct Place {
  bool infinite = false;
  long prime = 0;
  std::vector<std::size_t> decomposition;              // G_v
  std::vector<std::vector<std::size_t>> cosets;        // G / G_v, places of L over v
  std::string label() const { return infinite ? "inf" : std::to_string(prime); }
};

// Infinite place first, then the primes in ascending order.
std::vector<Place> make_places(const RealAbelianField& field, std::vector<long> primes);
std::vector<Place> canonical_places(const RealAbelianField& field);
std::vector<long> finite_primes(const std::vector<Place>& s);
std::size_t places_of_L(const std::vector<Place>& s);

struct YXData {
  std::vector<Place> places;
  std::vector<std::size_t> offsets;  // start of each place's block in Y coordinates
  GLattice y;
  GLattice x;
  // pi: X -> Y_inf as a map on ambient coordinates (|G| x dim Y).
  RatMatrix pi;
  std::vector<Rat> w_inf;
  std::vector<Rat> w_0;
};
YXData build_YX(const FieldHandle& field, const std::vector<Place>& s);

// Fixture-backed Z-basis of S-units (or S,T-units) modulo torsion.
class SUnitBasis {
 public:
  static std::shared_ptr<const SUnitBasis> from_json(const nlohmann::json& j, unsigned precision = kDefaultPrecision);
  static std::shared_ptr<const SUnitBasis> load(const std::string& path, unsigned precision = kDefaultPrecision);

  const FieldHandle& field() const { return field_; }
  const std::vector<Place>& places() const { return s_; }
  const std::vector<long>& t() const { return t_; }
  const std::vector<Cyclotomic>& elements() const { return basis_; }
  std::size_t rank() const { return basis_.size(); }
  // A_g on exponent column vectors: sigma_g(prod b^e) = +-prod b^{A_g e}.
  const IntMatrix& exponent_action(std::size_t g) const { return action_.at(g); }
  GLattice lattice() const;
  // Log embedding of each basis element in Y coordinates.
  std::vector<std::vector<Real>> log_vectors() const;

 private:
  SUnitBasis() = default;
  FieldHandle field_;
  std::vector<Place> s_;
  std::vector<long> t_;
  std::vector<Cyclotomic> basis_;
  std::vector<IntMatrix> action_;
};

using BasisHandle = std::shared_ptr<const SUnitBasis>;

// Rational exponent vector over an SUnitBasis (an element of Q (x) units).
struct MultiplicativeElement {
  BasisHandle basis;
  std::vector<Rat> exponents;

  MultiplicativeElement act(std::size_t g) const;
  MultiplicativeElement act(const QG& x) const;
  MultiplicativeElement operator+(const MultiplicativeElement& o) const;
  MultiplicativeElement scaled(const Rat& q) const;
  bool is_zero() const;
};

// log|x|_w for every place w of L over S, in Y coordinates.
std::vector<Real> log_embedding(const Cyclotomic& x, const FieldHandle& field, const std::vector<Place>& s);
Complex embed(const Cyclotomic& x, long a, unsigned precision);
Real log_abs(const Cyclotomic& x, const FieldHandle& field, const Place& v, std::size_t coset, unsigned precision);

std::vector<Real> dirichlet_regulator(const MultiplicativeElement& u);

using FormalProduct = std::vector<std::pair<Cyclotomic, Rat>>;

struct ExpressOptions {
  unsigned precision = kDefaultPrecision;
  long denominator_bound = 2;
};
MultiplicativeElement express_in_basis(const FormalProduct& x, const BasisHandle& basis, const ExpressOptions& opt = {});

// Exact check that prod y^{D c} equals a root of unity times prod b^{D e}.
bool verify_expression(const FormalProduct& x, const MultiplicativeElement& e, unsigned precision);

}  // namespace cyclostark
