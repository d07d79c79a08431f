#include "p2trop/identities.hpp"

#include <stdexcept>

namespace p2trop {

namespace {

// n (n-1) ... (n-k+1) / k! for any integer n, 0 for k < 0.
Rational choose(long n, long k) {
  if (k < 0) return 0;
  Rational c = 1;
  for (long i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
  return c;
}

}  // namespace

Rational harmonic_alternating_sum(int n) {
  if (n < 1) throw std::invalid_argument("harmonic_identity: n must be positive");
  Rational s = 0;
  for (int i = 0; i <= n; ++i) {
    Rational term = harmonic(i) * Rational(binomial(n, i));
    s += (i % 2 == 0) ? term : Rational(-term);
  }
  return s;
}

bool harmonic_identity(int n) { return harmonic_alternating_sum(n) == fraction(-1, n); }

CollapseSides binomial_collapse(int d, int nu, int n0, int n1, int n2, int a) {
  if (d <= 0 || nu < 0 || n0 < 0 || n1 < 0 || n2 < 0 || a < 0 || n0 > d || n2 > d)
    throw std::invalid_argument("binomial_collapse: arguments out of range");
  const int t = a + 1 - d + n0;
  Rational lhs = 0;
  for (int s = 0; s <= a + 1; ++s) {
    for (int m1 = 0; m1 <= t - s; ++m1) {
      const int m2 = t - s - m1;
      const long f = n1 + m1 - d - 1;
      if (f < 0 || d - n2 - m2 < 0) continue;
      Rational inner = choose(nu - 1, s - 1) * (n2 - n1) + choose(nu, s) * (m2 - m1);
      Rational term = Rational(factorial(f)) * inner /
                      Rational(factorial(m1) * factorial(m2) * factorial(d - n2 - m2));
      lhs += ((m1 + n1 + d + 1) % 2 == 0) ? term : Rational(-term);
    }
  }
  lhs *= inverse_factorial(d - n0);
  const int e = (d - n0) + (d - n1);
  const int n = n0 + n1 + n2;
  Rational rhs = -choose(nu + 3 * d - n - 1 - e, a - e) * inverse_factorial(d - n0) * inverse_factorial(d - n1) *
                 inverse_factorial(d - n2);
  return {lhs, rhs};
}

bool binomial_collapse_check(int d, int nu, int n0, int n1, int n2, int a) {
  const auto [lhs, rhs] = binomial_collapse(d, nu, n0, n1, n2, a);
  return lhs == rhs;
}

bool binomial_collapse_grid(int dmax, int numax, int amax, int n1max, std::vector<std::string>* failures) {
  bool ok = true;
  for (int d = 1; d <= dmax; ++d)
    for (int nu = 0; nu <= numax; ++nu)
      for (int a = 0; a <= amax; ++a)
        for (int n0 = 0; n0 <= d; ++n0)
          for (int n1 = 0; n1 <= n1max; ++n1)
            for (int n2 = 0; n2 <= d; ++n2) {
              const auto [lhs, rhs] = binomial_collapse(d, nu, n0, n1, n2, a);
              if (lhs == rhs) continue;
              ok = false;
              if (failures)
                failures->push_back("d=" + std::to_string(d) + " nu=" + std::to_string(nu) + " n=(" +
                                    std::to_string(n0) + "," + std::to_string(n1) + "," + std::to_string(n2) +
                                    ") a=" + std::to_string(a) + ": " + to_string(lhs) + " vs " + to_string(rhs));
            }
  return ok;
}

}  // namespace p2trop
