#include <algorithm>

#include "doctest.h"
#include "p2trop/generality.hpp"
#include "p2trop/invariants.hpp"

using namespace p2trop;

namespace {

InvariantOptions small(int dmax, int mbar) {
  InvariantOptions io;
  io.dmax = dmax;
  io.mbar = mbar;
  return io;
}

}  // namespace

TEST_CASE("r-vector bookkeeping") {
  const RVector r = parse_rvector("2,0,1,3");
  CHECK(r.count() == 3);
  CHECK(r.total() == 6);
  CHECK(r.position(1) == 1);
  CHECK(r.position(2) == 3);
  CHECK(r.value(3) == 3);
  CHECK(RVector{{1, 0, 1, 3}}.leq(r));
  CHECK(RVector{{1, 0, 1, 3}}.dominated_by(r));
  CHECK(!RVector{{1, 1, 1, 3}}.dominated_by(r));
  CHECK(to_string(r) == "2,0,1,3");
  CHECK_THROWS(parse_rvector("1,x"));
}

TEST_CASE("vertex multiplicities") {
  CHECK(mult_vertex(0, 0, 0, 0) == 1);
  CHECK(mult_vertex(0, 2, 1, 3) == fraction(1, 12));
  CHECK(mult_vertex(1, 1, 0, 0) == -1);
  CHECK(mult_vertex(1, 2, 0, 0) == fraction(-3, 4));
  CHECK(mult_vertex(2, 0, 0, 0) == 0);
  // ((1 + 1)^2 + 1 + 1) / 2
  CHECK(mult_vertex(2, 1, 1, 0) == 3);
}

TEST_CASE("dimension compatibility") {
  CHECK(DescendentKey{1, RVector{{1, 0}}, 0, 0, 0}.compatible());
  CHECK(!DescendentKey{1, RVector{{1, 1}}, 0, 0, 0}.compatible());
  CHECK(DescendentKey{1, RVector{{1, 1}}, 1, 0, 0}.compatible());
  const GWKey g = DescendentKey{2, RVector{{2, 0, 1}}, 1, 3, 1}.classical();
  CHECK(g == GWKey::make(2, {{2, 1}, {2, 0}, {0, 0}, {1, 3}}));
}

TEST_CASE("lines through two points") {
  const TropicalEngine e = generate_engine(1, 2, small(1, 1));
  const TropResult r = e.value({1, RVector{{1, 0}}, 0, 0, 0});
  CHECK(r.value == 1);
  Rational sum = 0;
  for (const auto& [name, v] : r.sectors) sum += v;
  CHECK(sum == r.value);
  CHECK(e.value({1, RVector{{1, 0}}, 1, 1, 0}).value == 1);
  CHECK(check_tropfun(e, {1, RVector{{1, 0}}, 1, 1, 0}));
  // incompatible keys vanish and satisfy the identity vacuously
  CHECK(e.value({1, RVector{{1, 1}}, 0, 0, 0}).value == 0);
  CHECK(e.value({1, RVector{{1, 1}}, 0, 1, 0}).value == 0);
  CHECK(check_tropfun(e, {1, RVector{{1, 1}}, 1, 0, 0}));
  CHECK_THROWS_AS(e.value({1, RVector{{1, 1, 1}}, 0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(e.value({1, RVector{{1, 1}}, 0, 0, 3}), std::invalid_argument);
  const auto j = to_json(r);
  CHECK(j["value"] == "1");
}

TEST_CASE("engine restricted to one class") {
  InvariantOptions io = small(1, 0);
  io.classes = 1u;
  const TropicalEngine e = generate_engine(1, 2, io);
  CHECK(e.value({1, RVector{{1, 0}}, 0, 0, 0}).value == 1);
  CHECK_THROWS_AS(e.value({1, RVector{{1, 0}}, 0, 0, 1}), PreconditionError);
}

TEST_CASE("table values are sector sums and match the classical side") {
  const TropicalEngine e = generate_engine(2, 3, small(2, 1));
  int nonzero = 0;
  for (const auto& r : invariant_table(e)) {
    Rational sum = 0;
    for (const auto& [name, v] : r.sectors) sum += v;
    CHECK(sum == r.value);
    CHECK(r.value == classical_invariant(r.key.classical()));
    if (r.value != 0) ++nonzero;
    if (r.key.m >= 1) CHECK(check_tropfun(e, r.key));
  }
  CHECK(nonzero > 10);
}

TEST_CASE("relabeling the points permutes r") {
  const InvariantOptions io = small(2, 0);
  const TropicalEngine e = generate_engine(3, 3, io);
  Arrangement b = e.diagram().arrangement();
  std::rotate(b.P.begin(), b.P.begin() + 1, b.P.end());
  const TropicalEngine f(b, io);
  for (const auto& r : invariant_table(e)) {
    DescendentKey key = r.key;
    std::rotate(key.r.r.begin(), key.r.r.begin() + 1, key.r.r.end());
    CHECK(f.value(key).value == r.value);
  }
}

TEST_CASE("perturbed vertex weight is detected") {
  InvariantOptions io = small(1, 1);
  io.mult1_scale = 2;
  const TropicalEngine e = generate_engine(1, 2, io);
  int wrong = 0;
  for (const auto& r : invariant_table(e))
    if (r.value != classical_invariant(r.key.classical())) ++wrong;
  CHECK(wrong > 0);
}

TEST_CASE("leading coefficients of the tropical mirror series") {
  const TropicalEngine e = generate_engine(1, 2, small(1, 2));
  const auto phi = t_trop(e, 4);
  for (int i = 0; i < 3; ++i) {
    UPoly constant_part;
    for (const auto& [key, c] : expand_degree_marker(phi[i], 4))
      if (key[0] == 0) constant_part.emplace(key, c);
    if (i == 0) {
      REQUIRE(constant_part.size() == 1);
      CHECK(constant_part.begin()->second == 1);
      for (int x : constant_part.begin()->first) CHECK(x == 0);
    } else {
      CHECK(constant_part.empty());
    }
  }
}

TEST_CASE("compatible key enumeration") {
  const InvariantOptions io = small(1, 1);
  const auto keys = compatible_keys(2, io);
  CHECK(!keys.empty());
  for (const auto& k : keys) {
    CHECK(k.compatible());
    CHECK(k.d >= 1);
    CHECK(k.d <= 1);
    CHECK(k.m <= 1);
  }
  CHECK(std::is_sorted(keys.begin(), keys.end()));
}
