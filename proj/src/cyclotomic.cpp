#include "cyclostark/cyclotomic.hpp"

#include <map>
#include <mutex>

namespace cyclostark {

namespace {

// Exact quotient of integer polynomials (coefficients low to high), divisor monic.
std::vector<Int> poly_divide_exact(const std::vector<Int>& a, const std::vector<Int>& b) {
  std::vector<Int> rem = a;
  const std::size_t db = b.size() - 1;
  if (rem.size() < b.size()) throw InputError("polynomial division degree mismatch");
  std::vector<Int> q(rem.size() - db, Int(0));
  for (std::size_t i = rem.size(); i-- > db;) {
    Int c = rem[i];
    if (c == 0) continue;
    q[i - db] = c;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] -= c * b[j];
  }
  for (std::size_t i = 0; i < db; ++i)
    if (rem[i] != 0) throw InputError("polynomial division is not exact");
  return q;
}

}  // namespace

std::vector<Int> cyclotomic_polynomial(long m) {
  if (m < 1) throw InputError("cyclotomic polynomial index must be positive");
  static std::mutex mu;
  static std::map<long, std::vector<Int>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  std::vector<Int> p(static_cast<std::size_t>(m) + 1, Int(0));
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (long d = 1; d < m; ++d)
    if (m % d == 0) p = poly_divide_exact(p, cyclotomic_polynomial(d));
  std::lock_guard<std::mutex> lock(mu);
  cache[m] = p;
  return p;
}

CyclotomicField::CyclotomicField(long m) : m_(m) {
  phi_ = cyclostark::cyclotomic_polynomial(m);
  degree_ = phi_.size() - 1;
  std::vector<Int> cur(degree_, Int(0));
  cur[0] = 1;
  for (long j = 0; j < m; ++j) {
    powers_.push_back(cur);
    // multiply by x
    Int top = cur[degree_ - 1];
    for (std::size_t i = degree_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (std::size_t i = 0; i < degree_; ++i) cur[i] -= top * phi_[i];
  }
  for (long a = 1; a <= m; ++a)
    if (gcd_long(a, m) == 1) units_.push_back(a % m == 0 ? m : a);
}

std::shared_ptr<const CyclotomicField> CyclotomicField::get(long m) {
  if (m < 1) throw InputError("cyclotomic conductor must be positive");
  if (m > 20000) throw UnsupportedError("cyclotomic conductor too large");
  static std::mutex mu;
  static std::map<long, std::shared_ptr<const CyclotomicField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  auto f = std::shared_ptr<const CyclotomicField>(new CyclotomicField(m));
  cache[m] = f;
  return f;
}

Cyclotomic::Cyclotomic(FieldPtr field, const Rat& value) : field_(std::move(field)) {
  num_.assign(field_->degree(), Int(0));
  num_[0] = value.get_num();
  den_ = value.get_den();
}

Cyclotomic Cyclotomic::from_coefficients(FieldPtr field, const std::vector<Rat>& coeffs) {
  if (coeffs.size() != field->degree())
    throw InputError("expected " + std::to_string(field->degree()) + " coefficients, got " +
                     std::to_string(coeffs.size()));
  Cyclotomic x;
  x.field_ = std::move(field);
  Int d = 1;
  for (const auto& c : coeffs) d = lcm(d, c.get_den());
  x.den_ = d;
  for (const auto& c : coeffs) {
    Rat s = c * d;
    x.num_.push_back(s.get_num());
  }
  x.normalize();
  return x;
}

Cyclotomic Cyclotomic::zeta(FieldPtr field, long j) {
  Cyclotomic x;
  x.num_ = field->zeta_power(j);
  x.field_ = std::move(field);
  x.den_ = 1;
  return x;
}

void Cyclotomic::normalize() {
  Int g = den_;
  for (const auto& c : num_) {
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  if (den_ < 0) g = -abs(g);
  if (g != 1 && g != 0) {
    for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

std::vector<Rat> Cyclotomic::coefficients() const {
  std::vector<Rat> out;
  for (const auto& c : num_) {
    Rat q(c, den_);
    q.canonicalize();
    out.push_back(q);
  }
  return out;
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : num_)
    if (c != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t i = 1; i < num_.size(); ++i)
    if (num_[i] != 0) return false;
  return true;
}

Rat Cyclotomic::rational_value() const {
  if (!is_rational()) throw InputError("cyclotomic number is not rational");
  Rat q(num_[0], den_);
  q.canonicalize();
  return q;
}

static void check_same(const Cyclotomic& a, const Cyclotomic& b) {
  if (!a.field() || !b.field() || a.field()->conductor() != b.field()->conductor())
    throw InputError("cyclotomic numbers from different fields");
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
  check_same(*this, o);
  Cyclotomic r;
  r.field_ = field_;
  if (den_ == o.den_) {
    r.den_ = den_;
    r.num_ = num_;
    for (std::size_t i = 0; i < num_.size(); ++i) r.num_[i] += o.num_[i];
  } else {
    r.den_ = den_ * o.den_;
    r.num_.resize(num_.size());
    for (std::size_t i = 0; i < num_.size(); ++i) r.num_[i] = num_[i] * o.den_ + o.num_[i] * den_;
  }
  r.normalize();
  return r;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
  check_same(*this, o);
  const std::size_t n = num_.size();
  const long m = field_->conductor();
  std::vector<Int> raw(2 * n - 1, Int(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (num_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (o.num_[j] != 0) raw[i + j] += num_[i] * o.num_[j];
  }
  Cyclotomic r;
  r.field_ = field_;
  r.num_.assign(raw.begin(), raw.begin() + static_cast<long>(n));
  for (std::size_t k = n; k < raw.size(); ++k) {
    if (raw[k] == 0) continue;
    const auto& p = field_->zeta_power(static_cast<long>(k) % m);
    for (std::size_t i = 0; i < n; ++i)
      if (p[i] != 0) r.num_[i] += raw[k] * p[i];
  }
  r.den_ = den_ * o.den_;
  r.normalize();
  return r;
}

Cyclotomic Cyclotomic::operator*(const Rat& q) const {
  Cyclotomic r = *this;
  for (auto& c : r.num_) c *= q.get_num();
  r.den_ *= q.get_den();
  r.normalize();
  return r;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
  check_same(*this, o);
  return den_ == o.den_ && num_ == o.num_;
}

Cyclotomic Cyclotomic::galois(long a) const {
  const long m = field_->conductor();
  if (gcd_long(a, m) != 1) throw InputError("galois exponent is not a unit");
  Cyclotomic r;
  r.field_ = field_;
  r.num_.assign(num_.size(), Int(0));
  for (std::size_t j = 0; j < num_.size(); ++j) {
    if (num_[j] == 0) continue;
    const auto& p = field_->zeta_power(mod_long(a * static_cast<long>(j), m));
    for (std::size_t i = 0; i < num_.size(); ++i)
      if (p[i] != 0) r.num_[i] += num_[j] * p[i];
  }
  r.den_ = den_;
  r.normalize();
  return r;
}

Cyclotomic Cyclotomic::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  Cyclotomic result = one(field_);
  Cyclotomic base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return result;
}

Rat Cyclotomic::norm() const {
  Cyclotomic p = one(field_);
  for (long a : field_->units()) p *= galois(a);
  return p.rational_value();
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw InputError("inverse of zero");
  Cyclotomic p = one(field_);
  for (long a : field_->units())
    if (a % field_->conductor() != 1 % field_->conductor()) p *= galois(a);
  Rat n = (p * *this).rational_value();
  return p * (1 / n);
}

Complex Cyclotomic::evaluate(long a) const {
  const long m = field_->conductor();
  Real two_pi = 2 * real_pi();
  Complex z{Real(0), Real(0)};
  for (std::size_t j = 0; j < num_.size(); ++j) {
    if (num_[j] == 0) continue;
    Real angle = two_pi * Real(mod_long(a * static_cast<long>(j), m)) / Real(m);
    Real c(num_[j].get_str());
    z.re += c * boost::multiprecision::cos(angle);
    z.im += c * boost::multiprecision::sin(angle);
  }
  Real d(den_.get_str());
  z.re /= d;
  z.im /= d;
  return z;
}

}  // namespace cyclostark
