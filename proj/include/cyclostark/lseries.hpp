#pragma once

#include <string>
#include <vector>

#include "cyclostark/groupring.hpp"
#include "cyclostark/numberfield.hpp"
#include "json.hpp"

namespace cyclostark {

struct LValueReport {
  std::string label;
  long vanishing_order = 0;
  Complex derivative;
  unsigned precision = kDefaultPrecision;
  nlohmann::json to_json() const;
};

// r_S(chi): |S| - 1 for the trivial character, otherwise the number of v in S
// with chi trivial on G_v.
long vanishing_order(const Character& chi, const std::vector<Place>& s);

// L'_S(chi, 0) = -1/2 sum_{a in (Z/m)^x} chi(a) log|1 - zeta_m^a|, for
// S = {inf} and the primes dividing m.
Complex l_derivative_at_zero(const Character& chi, const RealAbelianField& field, unsigned precision = kDefaultPrecision);

LValueReport l_value_report(const Character& chi, const RealAbelianField& field, unsigned precision = kDefaultPrecision);

// sum_chi L'_S(chi^{-1}, 0) e_chi with real coefficients.
RG equivariant_leading_term(const RealAbelianField& field, unsigned precision = kDefaultPrecision);

// exp(2 pi i k / n)
Complex root_of_unity(long k, long n);

}  // namespace cyclostark
