#include <random>
#include <set>

#include "doctest.h"
#include "p2trop/generality.hpp"

using namespace p2trop;

namespace {

Arrangement two_points() {
  Arrangement a;
  a.Q = make_point(-3, 1, -5, 2);
  a.P = {make_point(0, 1, 1, 1), make_point(1, 1, 0, 1)};
  return a;
}

ExponentKey ukey(int n0, int n1, int n2, std::initializer_list<std::pair<int, int>> us) {
  ExponentKey k = ExponentKey::xpow(n0, n1, n2);
  for (auto [i, j] : us) k.u[i - 1] = static_cast<int8_t>(j);
  return k;
}

Wall make_wall(const Point& base, Vec2 dir, const ExponentKey& mono) {
  Wall w;
  w.support = {base, dir, false};
  w.mono = mono;
  w.coeff = 1;
  return w;
}

}  // namespace

TEST_CASE("initial rays") {
  Arrangement a;
  a.Q = make_point(0, 1, 0, 1);
  CHECK(initial_rays(a).empty());
  a.P = {make_point(1, 1, 1, 1)};
  const auto rays = initial_rays(a);
  REQUIRE(rays.size() == 3);
  const Vec2 dirs[] = {{1, 1}, {-1, 0}, {0, -1}};
  for (int i = 0; i < 3; ++i) {
    CHECK(rays[i].support.base == a.P[0]);
    CHECK(rays[i].support.dir == dirs[i]);
    CHECK(rays[i].weight == 1);
    CHECK(rays[i].coeff == 1);
    CHECK(rays[i].mono == ukey(i == 0, i == 1, i == 2, {{1, 0}}));
    CHECK(rays[i].marked_origin == 1);
  }
  CHECK(initial_rays(two_points()).size() == 6);
}

TEST_CASE("scatter at an unmarked point") {
  const RingConfig cfg{2, 0, 4, -1};
  const Wall w1 = make_wall(make_point(0, 1, 1, 1), {0, -1}, ukey(0, 0, 1, {{1, 0}}));
  const Wall w2 = make_wall(make_point(1, 1, 0, 1), {-1, 0}, ukey(0, 1, 0, {{2, 0}}));
  const Point x = make_point(0, 1, 0, 1);
  const auto child = scatter_unmarked(w1, w2, x, cfg);
  REQUIRE(child);
  CHECK(child->support.base == x);
  CHECK(child->support.dir == Vec2{-1, -1});
  CHECK(child->weight == 1);
  CHECK(child->coeff == 1);
  CHECK(child->mono == ukey(0, 1, 1, {{1, 0}, {2, 0}}));

  // the child makes the loop around x trivial
  ScatteringDiagram d(two_points(), cfg);
  d.add_wall(w1);
  d.add_wall(w2);
  CHECK(!check_loop_identity(d, x));
  d.add_wall(*child);
  CHECK(check_loop_identity(d, x));

  const Wall w3 = make_wall(make_point(1, 1, 0, 1), {-1, 0}, ukey(0, 1, 0, {{1, 0}}));
  CHECK(!scatter_unmarked(w1, w3, x, cfg));
  const Wall w4 = make_wall(make_point(2, 1, 1, 1), {0, -1}, ukey(1, 0, 0, {{2, 0}}));
  CHECK(!scatter_unmarked(w1, w4, x, cfg));
  CHECK_THROWS_AS(scatter_unmarked(w1, w2, make_point(5, 1, 0, 1), cfg), PreconditionError);
}

TEST_CASE("gluing at a marked point") {
  const Arrangement a = two_points();
  const RingConfig cfg{2, 0, 4, -1};
  const auto w = glue_at_marked(a, 1, 1, ExponentKey::xpow(0, 0, 1), Rational(1), cfg);
  REQUIRE(w);
  CHECK(w->support.dir == Vec2{0, -1});
  CHECK(w->mono == ukey(0, 0, 1, {{1, 0}}));
  CHECK(w->coeff == 1);
  const auto w2 = glue_at_marked(a, 1, 2, ExponentKey::xpow(0, 1, 1), Rational(1), cfg);
  REQUIRE(w2);
  CHECK(w2->support.dir == Vec2{-1, -1});
  CHECK(w2->mono == ukey(0, 1, 1, {{1, 1}}));
  CHECK(w2->coeff == 1);
  CHECK(w2->weight == 1);
  const auto w3 = glue_at_marked(a, 2, 1, ukey(0, 2, 0, {{1, 0}}), fraction(1, 2), cfg);
  REQUIRE(w3);
  CHECK(w3->weight == 2);
  CHECK(w3->support.dir == Vec2{-1, 0});
  CHECK(w3->coeff == 1);
  CHECK(!glue_at_marked(a, 1, 3, ExponentKey::xpow(1, 1, 1), Rational(1), cfg));
  CHECK_THROWS_AS(glue_at_marked(a, 1, 1, ukey(0, 1, 0, {{1, 0}}), Rational(1), cfg), PreconditionError);
  CHECK_THROWS_AS(glue_at_marked(a, 3, 1, ExponentKey::xpow(0, 1, 0), Rational(1), cfg), PreconditionError);
}

TEST_CASE("small diagrams") {
  Arrangement a;
  a.Q = make_point(0, 1, 0, 1);
  CHECK(build_diagram(a, DiagramOptions{}).walls().empty());
  a.P = {make_point(1, 1, 1, 1)};
  const ScatteringDiagram d1 = build_diagram(a, DiagramOptions{});
  CHECK(d1.walls().size() == 3);
  const auto j = to_json(d1);
  CHECK(j["walls"].size() == 3);
  std::set<std::vector<long>> dirs;
  for (const auto& w : j["walls"]) {
    CHECK(w["marked_origin"] == 1);
    dirs.insert(w["direction"].get<std::vector<long>>());
  }
  CHECK(dirs == std::set<std::vector<long>>{{1, 1}, {-1, 0}, {0, -1}});
}

TEST_CASE("path automorphism") {
  const RingConfig cfg{1, 0, 4, -1};
  Arrangement a;
  a.Q = make_point(-3, 1, -5, 2);
  a.P = {make_point(0, 1, 1, 1)};
  ScatteringDiagram d(a, cfg);
  d.add_wall(make_wall(a.P[0], {0, -1}, ukey(0, 0, 1, {{1, 0}})));
  const Point left = make_point(-1, 1, 0, 1), right = make_point(1, 1, 0, 1);
  const Series x1 = x_var(cfg, 1);
  const Series bent = x1 - monomial(cfg, ukey(0, 1, 1, {{1, 0}}));
  CHECK(path_automorphism(d, {left, right}, x1) == bent);
  CHECK(path_automorphism(d, {right, left}, x1) == x1 + monomial(cfg, ukey(0, 1, 1, {{1, 0}})));
  CHECK(path_automorphism(d, {right, left}, path_automorphism(d, {left, right}, x1)) == x1);
  // no crossing
  CHECK(path_automorphism(d, {left, make_point(-1, 1, 3, 1)}, x1) == x1);
  // coefficients are fixed
  const Series u = u_var(cfg, 1, 0);
  CHECK(path_automorphism(d, {left, right}, u) == u);
  CHECK_THROWS_AS(path_automorphism(d, {make_point(0, 1, 0, 1), right}, x1), PreconditionError);
  // through the Init point
  CHECK_THROWS_AS(path_automorphism(d, {make_point(-1, 1, 1, 1), make_point(1, 1, 1, 1)}, x1), PreconditionError);
}

TEST_CASE("built diagrams are consistent") {
  for (uint64_t seed : {1, 2, 3}) {
    for (int k = 2; k <= 3; ++k) {
      const Arrangement a = generate_arrangement(seed, k, GeneratorOptions{});
      const ScatteringDiagram d = build_diagram(a, DiagramOptions{});
      int checked = 0;
      for (const auto& w : d.walls()) CHECK(w.round() <= k);
      for (const auto& sp : d.singular_points()) {
        if (sp.marked) {
          CHECK_THROWS_AS(check_loop_identity(d, sp.at), PreconditionError);
          continue;
        }
        CHECK(check_loop_identity(d, sp.at));
        ++checked;
      }
      CHECK(checked > 0);
    }
  }
}

TEST_CASE("deleting a child wall breaks consistency") {
  const Arrangement a = generate_arrangement(5, 2, GeneratorOptions{});
  const ScatteringDiagram d = build_diagram(a, DiagramOptions{});
  int child = -1;
  for (int i = 0; i < static_cast<int>(d.walls().size()) && child < 0; ++i)
    if (d.walls()[i].parent1 >= 0) child = i;
  REQUIRE(child >= 0);
  const Point at = d.walls()[child].support.base;
  CHECK(check_loop_identity(d, at));
  CHECK(!check_loop_identity(d.without_wall(child), at));
}

TEST_CASE("a path and its reverse cancel") {
  const Arrangement a = generate_arrangement(2, 2, GeneratorOptions{});
  const ScatteringDiagram d = build_diagram(a, DiagramOptions{});
  std::mt19937_64 rng(11);
  auto coord = [&] { return fraction(static_cast<long>(rng() % 4001) - 2000, 97); };
  int done = 0;
  for (int trial = 0; trial < 60 && done < 20; ++trial) {
    std::vector<Point> path{{coord(), coord()}, {coord(), coord()}, {coord(), coord()}};
    std::vector<Point> back(path.rbegin(), path.rend());
    for (int i = 0; i < 3; ++i) {
      const Series x = x_var(d.config(), i);
      try {
        CHECK(path_automorphism(d, back, path_automorphism(d, path, x)) == x);
      } catch (const PreconditionError&) {
        continue;
      }
      ++done;
    }
  }
  CHECK(done > 0);
}
