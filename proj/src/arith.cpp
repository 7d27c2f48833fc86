#include "cyclostark/arith.hpp"

#include <cctype>

namespace cyclostark {

Rat parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw InputError("empty rational literal");
  auto valid_int = [](const std::string& t) {
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw InputError("bad rational literal '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  if (den[0] == '+') den.erase(0, 1);
  Int n(num), d(den);
  if (d == 0) throw InputError("zero denominator in '" + s + "'");
  Rat q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rat& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Int& z) { return z.get_str(); }

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int mod(const Int& a, const Int& b) {
  Int r;
  Int ab = abs(b);
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), ab.get_mpz_t());
  return r;
}

long valuation(const Int& n, long p) {
  if (n == 0) throw InputError("valuation of zero");
  Int t = abs(n);
  long v = 0;
  while (mpz_divisible_ui_p(t.get_mpz_t(), static_cast<unsigned long>(p))) {
    t /= p;
    ++v;
  }
  return v;
}

long valuation(const Rat& q, long p) {
  return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

long gcd_long(long a, long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

long mod_long(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

long pow_mod(long a, long e, long m) {
  long r = 1 % m;
  long b = mod_long(a, m);
  while (e > 0) {
    if (e & 1) r = static_cast<long>((static_cast<__int128>(r) * b) % m);
    b = static_cast<long>((static_cast<__int128>(b) * b) % m);
    e >>= 1;
  }
  return r;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> out;
  if (n < 0) n = -n;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

RatMatrix to_rat(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
  return r;
}

IntMatrix to_int(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw InputError("matrix entry is not an integer");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

RatMatrix identity_rat(std::size_t n) {
  RatMatrix r(n, n, Rat(0));
  for (std::size_t i = 0; i < n; ++i) r(i, i) = 1;
  return r;
}

IntMatrix identity_int(std::size_t n) {
  IntMatrix r(n, n, Int(0));
  for (std::size_t i = 0; i < n; ++i) r(i, i) = 1;
  return r;
}

std::vector<Rat> row_times(const std::vector<Rat>& v, const RatMatrix& m) {
  if (v.size() != m.rows()) throw InputError("vector-matrix shape mismatch");
  std::vector<Rat> out(m.cols(), Rat(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
  }
  return out;
}

std::vector<Rat> times_col(const RatMatrix& m, const std::vector<Rat>& v) {
  if (v.size() != m.cols()) throw InputError("matrix-vector shape mismatch");
  std::vector<Rat> out(m.rows(), Rat(0));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (v[j] != 0) out[i] += m(i, j) * v[j];
  return out;
}

}  // namespace cyclostark
