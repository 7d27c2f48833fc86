#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cyclostark/lattice.hpp"
#include "cyclostark/lseries.hpp"
#include "cyclostark/numberfield.hpp"
#include "json.hpp"

namespace cyclostark {

// Global regulator sign. With log|.| at real places and -ord log Np at finite
// ones, R(eps^kRegulatorSign) matches (sum_chi L'(chi^{-1},0) e_chi)(w_inf - w_0)
// for eps = N(1 - zeta_m)^{1/2}.
constexpr int kRegulatorSign = -1;

// N_{Q(zeta_m)/L}(1 - zeta_m) = prod_{a in H} (1 - zeta_m^a).
Cyclotomic norm_one_minus_zeta(const RealAbelianField& field);

struct WeilStarkElement {
  BasisHandle basis;  // S-units for S = {inf} and the primes dividing m
  MultiplicativeElement epsilon;
  QG e_pi;
};

WeilStarkElement cyclotomic_element(const BasisHandle& basis, unsigned precision = kDefaultPrecision);

// Sum of e_chi over the characters with r_S(chi) = 1.
QG compute_e_pi(const RealAbelianField& field, const std::vector<Place>& s);

// prod_{v in T} (1 - sigma_v^{-1} v).
QG gamma_T(const RealAbelianField& field, const std::vector<long>& t, const std::vector<long>& s_primes = {});

// eps_T = gamma_T * eps, written over a basis of (S,T)-units.
struct TModifiedElement {
  BasisHandle t_basis;
  QG gamma;
  MultiplicativeElement epsilon_t;
  // Rows: T-basis elements in S-basis exponents.
  IntMatrix change_of_basis;
};
TModifiedElement t_modify(const WeilStarkElement& eps, const BasisHandle& t_basis, unsigned precision = kDefaultPrecision);

// Z[G]-span of phi(x) for phi running over a Z-basis of Hom(U, Z[G]).
IdealLattice evaluation_ideal(const MultiplicativeElement& x, const HomLattice& dual);
IdealLattice evaluation_ideal(const MultiplicativeElement& x);

struct SelmerFixture {
  FieldHandle field;
  std::vector<Place> s;
  std::vector<long> t;
  std::vector<Place> s_prime;
  std::optional<FiniteGModule> cl_st;
  std::optional<FiniteGModule> cl_sprime_t;
  std::optional<Presentation> presentation;

  static SelmerFixture from_json(const nlohmann::json& j, const FieldHandle& field);
  static SelmerFixture load(const std::string& path, const FieldHandle& field);
};

enum class Status { pass, fail, skipped };
std::string to_string(Status s);

struct Report {
  std::string check;
  std::string subject;
  Status status = Status::pass;
  nlohmann::json detail = nlohmann::json::object();
  nlohmann::json to_json() const;
};

// ||R(eps^sign) - (sum_chi L'(chi^{-1},0) e_chi)(w_inf - w_0)||_inf.
Report verify_regulator(const WeilStarkElement& eps, unsigned precision = kDefaultPrecision,
                        unsigned tolerance_digits = kDefaultToleranceDigits);
Report verify_integrality(const TModifiedElement& eps_t);
// The same element divided by a prime coprime to the index; must fail.
Report integrality_negative_control(const TModifiedElement& eps_t);
TModifiedElement scaled_off_lattice(const TModifiedElement& eps_t);
Report verify_fitting_equality(const TModifiedElement& eps_t, const SelmerFixture& selmer);
Report verify_annihilation(const TModifiedElement& eps_t, const SelmerFixture& selmer);
Report fe_dimension_check(const BasisHandle& basis, long a);

// JSON renderings with exact "p/q" strings.
nlohmann::json qg_json(const QG& x);
nlohmann::json ideal_json(const IdealLattice& l);
nlohmann::json rats_json(const std::vector<Rat>& v);
nlohmann::json ints_json(const std::vector<Int>& v);

// eps with exponent +1 added on the first basis unit.
WeilStarkElement corrupted(const WeilStarkElement& eps);

}  // namespace cyclostark
