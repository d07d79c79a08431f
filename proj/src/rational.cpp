#include "p2trop/rational.hpp"

#include <vector>

namespace p2trop {

std::string to_string(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

Integer factorial(long n) {
  if (n < 0) throw std::domain_error("factorial of negative argument");
  static std::vector<Integer> table{Integer(1)};
  while (static_cast<long>(table.size()) <= n) {
    Integer next = table.back() * static_cast<unsigned long>(table.size());
    table.push_back(next);
  }
  return table[n];
}

Rational inverse_factorial(long n) {
  if (n < 0) return Rational(0);
  return Rational(Integer(1), factorial(n));
}

Integer binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return Integer(0);
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Rational fraction(long p, long q) {
  if (q == 0) throw std::domain_error("zero denominator");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

Rational harmonic(long n) {
  Rational h(0);
  for (long j = 1; j <= n; ++j) h += fraction(1, j);
  return h;
}

Rational harmonic_squares(long n) {
  Rational h(0);
  for (long j = 1; j <= n; ++j) h += Rational(Integer(1), Integer(j) * j);
  return h;
}

}  // namespace p2trop
