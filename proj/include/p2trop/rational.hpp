#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace p2trop {

using Rational = mpq_class;
using Integer = mpz_class;

// "p" for integers, "p/q" otherwise, always in lowest terms.
std::string to_string(const Rational& q);
Rational parse_rational(std::string_view text);

// Factorial of n >= 0; inverse_factorial(n) is 0 for n < 0, matching the
// convention that terms with negative factorial arguments vanish.
Integer factorial(long n);
Rational inverse_factorial(long n);

// Binomial coefficient, 0 unless 0 <= k <= n.
Integer binomial(long n, long k);

Rational fraction(long p, long q);  // canonicalized p/q

Rational harmonic(long n);         // sum_{j<=n} 1/j
Rational harmonic_squares(long n); // sum_{j<=n} 1/j^2

}  // namespace p2trop
