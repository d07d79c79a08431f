#include "doctest.h"
#include "p2trop/identities.hpp"

using namespace p2trop;

TEST_CASE("alternating harmonic sums") {
  CHECK(harmonic_alternating_sum(1) == -1);
  CHECK(harmonic_alternating_sum(2) == fraction(-1, 2));
  CHECK(harmonic_alternating_sum(30) == fraction(-1, 30));
  for (int n = 1; n <= 30; ++n) CHECK(harmonic_identity(n));
}

TEST_CASE("binomial collapse") {
  // t = a + 1 - d + n_0 < 0: every term vanishes
  const CollapseSides zero = binomial_collapse(3, 0, 0, 0, 0, 0);
  CHECK(zero.lhs == 0);
  CHECK(zero.rhs == 0);
  CHECK(binomial_collapse_check(3, 0, 0, 0, 0, 0));
  // n_1 >= d + 1: both sides vanish
  for (int d = 1; d <= 3; ++d)
    for (int a = 0; a <= 3; ++a) {
      const CollapseSides s = binomial_collapse(d, 1, d, d + 1, 0, a);
      CHECK(s.lhs == 0);
      CHECK(s.rhs == 0);
    }
  std::vector<std::string> f;
  CHECK(binomial_collapse_grid(3, 3, 3, 3, &f));
  CHECK(f.empty());
  int nonzero = 0;
  for (int a = 0; a <= 3; ++a)
    for (int n0 = 0; n0 <= 2; ++n0)
      if (binomial_collapse(2, 1, n0, 1, 1, a).rhs != 0) ++nonzero;
  CHECK(nonzero > 0);
}
