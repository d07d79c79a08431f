#include <random>

#include "doctest.h"
#include "p2trop/coeffring.hpp"

using namespace p2trop;

namespace {

RingConfig ring(int k, int mbar = 0, int max_order = -1) { return RingConfig{k, mbar, 6, max_order}; }

Series u(const RingConfig& c, int i, int j) { return u_var(c, i, j); }
Series x(const RingConfig& c, int i) { return x_var(c, i); }

// Random small element with zero constant term.
Series random_series(std::mt19937_64& rng, const RingConfig& cfg) {
  Series s(cfg);
  const int terms = 1 + static_cast<int>(rng() % 4);
  for (int t = 0; t < terms; ++t) {
    ExponentKey k;
    for (int i = 0; i < 3; ++i) k.x[i] = static_cast<uint8_t>(rng() % 2);
    for (int p = 0; p < cfg.k; ++p)
      if (rng() % 2) k.u[p] = static_cast<int8_t>(rng() % (cfg.top_order() + 1));
    if (k.x_total() == 0 && !k.has_u()) k.x[0] = 1;
    s.add_term(k, fraction(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 3)));
  }
  return s;
}

}  // namespace

TEST_CASE("ideal relations in products") {
  const RingConfig c = ring(2);
  CHECK((u(c, 1, 0) * u(c, 1, 1)).is_zero());
  const Series p = u(c, 1, 0) * u(c, 2, 0);
  REQUIRE(p.size() == 1);
  CHECK(p.terms().begin()->first.u_count() == 2);
  const Series one = constant(c, 1);
  const Series lhs = (one + u(c, 1, 0) * x(c, 2)) * (one + u(c, 1, 1) * x(c, 2));
  CHECK(lhs == one + u(c, 1, 0) * x(c, 2) + u(c, 1, 1) * x(c, 2));
}

TEST_CASE("mismatched configurations are rejected") {
  CHECK_THROWS_AS(mul(x(ring(1), 0), x(ring(2), 0)), ConfigError);
  CHECK_THROWS_AS(u_var(ring(1), 2, 0), ConfigError);
}

TEST_CASE("truncated exponential") {
  const RingConfig c = ring(2);
  const Series a = u(c, 1, 0) * x(c, 2);
  CHECK(exp_truncated(a, -1) == constant(c, 1) + hbar_shift(a, -1));
  CHECK(exp_truncated(Series(c), -1) == constant(c, 1));

  const Series b = u(c, 2, 0) * x(c, 1);
  const Series expected = constant(c, 1) + hbar_shift(a + b, -1) + hbar_shift(a * b, -2);
  CHECK(exp_truncated(a + b, -1) == expected);
  // against the product of the separate exponentials
  CHECK(exp_truncated(a + b, -1) == exp_truncated(a, -1) * exp_truncated(b, -1));

  CHECK_THROWS_AS(exp_truncated(constant(c, 1) + a, -1), PreconditionError);
}

TEST_CASE("fundamental operator") {
  const RingConfig c = ring(2, 0, 2);
  CHECK(fundamental_operator(u(c, 1, 0) * x(c, 2)) == u(c, 1, 1) * x(c, 2));
  CHECK(fundamental_operator(w_basic(c)).is_zero());
  const Series s = u(c, 1, 0) * u(c, 2, 1) * x(c, 1) * x(c, 2);
  CHECK(fundamental_operator(s) == u(c, 1, 1) * u(c, 2, 1) * x(c, 1) * x(c, 2) + u(c, 1, 0) * u(c, 2, 2) * x(c, 1) * x(c, 2));
  // the top order is killed
  CHECK(fundamental_operator(u(c, 1, 2)).is_zero());
}

TEST_CASE("T-hat operator") {
  CHECK(that_operator(x(ring(1, 2), 0)) == x(ring(1, 2), 0));
  const RingConfig c = ring(1, 1, 1);
  const Series a = u(c, 1, 0) * x(c, 2);
  CHECK(that_operator(a) == a + y0_var(c) * u(c, 1, 1) * x(c, 2));
  const RingConfig z = ring(2, 0);
  const Series b = u(z, 1, 0) * x(z, 2) + u(z, 2, 1) * x(z, 0);
  CHECK(that_operator(b) == b);
}

TEST_CASE("y0 truncation") {
  const RingConfig c = ring(1, 2);
  const Series y = y0_var(c);
  CHECK(!(y * y).is_zero());
  CHECK((y * y * y).is_zero());
}

TEST_CASE("ring axioms on random elements") {
  std::mt19937_64 rng(11);
  const RingConfig c = ring(3, 2, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const Series a = random_series(rng, c), b = random_series(rng, c), d = random_series(rng, c);
    CHECK(a * b == b * a);
    CHECK((a * b) * d == a * (b * d));
    CHECK(a * (b + d) == a * b + a * d);
    // O is a derivation and T-hat a ring homomorphism
    CHECK(fundamental_operator(a * b) == fundamental_operator(a) * b + a * fundamental_operator(b));
    CHECK(that_operator(a * b) == that_operator(a) * that_operator(b));
    CHECK(exp_truncated(a + b, -1) == exp_truncated(a, -1) * exp_truncated(b, -1));
  }
}

TEST_CASE("series JSON round trip") {
  std::mt19937_64 rng(5);
  const RingConfig c = ring(3, 2, 2);
  for (int trial = 0; trial < 10; ++trial) {
    const Series a = random_series(rng, c) * random_series(rng, c) + y0_var(c);
    CHECK(series_from_json(c, to_json(a)) == a);
  }
}
