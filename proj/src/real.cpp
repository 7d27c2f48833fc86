#include "cyclostark/real.hpp"

#include <sstream>

namespace cyclostark {

PrecisionScope::PrecisionScope(unsigned digits) : saved_(Real::default_precision()) {
  Real::default_precision(digits);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

Real real_pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

Real log_of(long n) { return boost::multiprecision::log(Real(n)); }

std::string to_decimal(const Real& x, unsigned digits) {
  std::ostringstream os;
  os.precision(digits);
  os << std::scientific << x;
  return os.str();
}

Real abs_complex(const Complex& z) { return boost::multiprecision::sqrt(z.re * z.re + z.im * z.im); }

Real tolerance_from_digits(unsigned k) { return boost::multiprecision::pow(Real(10), -static_cast<int>(k)); }

}  // namespace cyclostark
