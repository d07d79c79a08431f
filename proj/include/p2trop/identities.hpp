#pragma once

// Exact checks of two combinatorial identities used by the marked-point
// evaluation of descendent invariants.

#include <string>
#include <vector>

#include "p2trop/rational.hpp"

namespace p2trop {

// sum_{i=0}^n (-1)^i H_i C(n, i) and its closed form -1/n.
Rational harmonic_alternating_sum(int n);
bool harmonic_identity(int n);

struct CollapseSides {
  Rational lhs;
  Rational rhs;
};

// Double sum over s and M_1 + M_2 = t - s with t = a + 1 - d + n_0, against
//   -C(nu + 3d - |n| - 1 - e, a - e) / ((d-n_0)! (d-n_1)! (d-n_2)!),
// e = (d - n_0) + (d - n_1). Terms with a negative factorial argument are 0;
// binomial coefficients are polynomial in the upper argument, so C(-1, k) = (-1)^k.
CollapseSides binomial_collapse(int d, int nu, int n0, int n1, int n2, int a);
bool binomial_collapse_check(int d, int nu, int n0, int n1, int n2, int a);

// Every grid point with 1 <= d <= dmax, nu, a <= amax and n_0, n_2 <= d,
// n_1 <= n1max.
bool binomial_collapse_grid(int dmax, int numax, int amax, int n1max, std::vector<std::string>* failures = nullptr);

}  // namespace p2trop
