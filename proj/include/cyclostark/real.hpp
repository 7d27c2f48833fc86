#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace cyclostark {

using Real = boost::multiprecision::mpfr_float;

// Sets the working precision (decimal digits) for the enclosing scope and
// restores the previous value on exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

struct Complex {
  Real re;
  Real im;
};

Real real_pi();
Real log_of(long n);
// Decimal rendering with the given number of significant digits.
std::string to_decimal(const Real& x, unsigned digits);
Real abs_complex(const Complex& z);
// 10^-k
Real tolerance_from_digits(unsigned k);

}  // namespace cyclostark
