#include <random>

#include "doctest.h"
#include "p2trop/brokenlines.hpp"
#include "p2trop/generality.hpp"

using namespace p2trop;

namespace {

ExponentKey ukey(int n0, int n1, int n2, std::initializer_list<std::pair<int, int>> us, int hbar = 0, int y0 = 0) {
  ExponentKey k = ExponentKey::xpow(n0, n1, n2);
  for (auto [i, j] : us) k.u[i - 1] = static_cast<int8_t>(j);
  k.hbar = static_cast<int16_t>(hbar);
  k.y0 = static_cast<uint8_t>(y0);
  return k;
}

// Off the diagonal through P_1: at (0, 0) the bent line would pass P_1.
ScatteringDiagram one_point() {
  Arrangement a;
  a.Q = make_point(0, 1, -1, 2);
  a.P = {make_point(1, 1, 1, 1)};
  return build_diagram(a, DiagramOptions{});
}

bool off_supports(const ScatteringDiagram& d, const Point& p) {
  for (const auto& s : d.supports())
    if (ray_parameter(s.ray, p)) return false;
  return true;
}

}  // namespace

TEST_CASE("empty diagram has the three unbent lines") {
  Arrangement a;
  a.Q = make_point(2, 3, -1, 5);
  const ScatteringDiagram d = build_diagram(a, DiagramOptions{});
  const auto lines = enumerate_broken_lines(d, a.Q);
  REQUIRE(lines.size() == 3);
  for (const auto& l : lines) CHECK(l.bends() == 0);
  CHECK(potential_W_k0(d) == w_basic(d.config()));
  RingConfig c2 = d.config();
  c2.mbar = 2;
  CHECK(potential_W_kmbar(d, 2) == y0_var(c2) + w_basic(c2));
  CHECK(exp_potential_triples(d, a.Q) == constant(d.config(), 1));
  const auto recs = semirigid_disks_at(d, a.Q);
  REQUIRE(recs.size() == 3);
  for (int i = 0; i < 3; ++i) {
    int found = 0;
    for (const auto& r : recs)
      if (r.mono == ExponentKey::xpow(i == 0, i == 1, i == 2)) {
        ++found;
        CHECK(r.direction == -kFan[i]);
        CHECK(r.flexibility() == 1);
      }
    CHECK(found == 1);
  }
}

TEST_CASE("one marked point") {
  const ScatteringDiagram d = one_point();
  const RingConfig& cfg = d.config();
  const auto lines = enumerate_broken_lines(d, d.arrangement().Q);
  CHECK(lines.size() == 4);
  const Series bent = monomial(cfg, ukey(0, 1, 1, {{1, 0}}));
  CHECK(potential_W_k0(d) == w_basic(cfg) + bent);
  CHECK(exp_potential_triples(d, d.arrangement().Q) == constant(cfg, 1) + monomial(cfg, ukey(0, 1, 1, {{1, 0}}, -1)));

  const auto recs = semirigid_disks_at(d, d.arrangement().Q);
  REQUIRE(recs.size() == 4);
  int bent_count = 0;
  for (const auto& r : recs) {
    CHECK(r.flexibility() == 1);
    if (r.u_support) {
      ++bent_count;
      CHECK(r.direction == Vec2{-1, -1});
      CHECK(r.u_support == 1u);
    }
  }
  CHECK(bent_count == 1);

  BrokenLineOptions ex;
  ex.exclude_based_at = 1;
  CHECK(enumerate_broken_lines(d, d.arrangement().P[0], ex).size() == 3);
  CHECK_THROWS_AS(enumerate_broken_lines(d, make_point(1, 1, -3, 1)), PreconditionError);

  // with k = 1 only u_{1,0} survives, so the T-dressing adds nothing here
  RingConfig c1 = cfg;
  c1.mbar = 1;
  CHECK(potential_W_kmbar(d, 0) == y0_var(cfg) + potential_W_k0(d));
  CHECK(potential_W_kmbar(d, 1) == y0_var(c1) + w_basic(c1) + monomial(c1, ukey(0, 1, 1, {{1, 0}})));
}

TEST_CASE("T-dressing of the bent term") {
  // same geometry with a far second point, so u_{1,1} is available
  Arrangement a;
  a.Q = make_point(0, 1, -1, 2);
  a.P = {make_point(1, 1, 1, 1), make_point(-200, 3, 150, 7)};
  const ScatteringDiagram d = build_diagram(a, DiagramOptions{1, -1, true});
  RingConfig c1 = d.config();
  c1.mbar = 1;
  const Series w = potential_W_kmbar(d, 1);
  CHECK(w.coefficient(ukey(0, 1, 1, {{1, 0}})) == 1);
  CHECK(w.coefficient(ukey(0, 1, 1, {{1, 1}}, 0, 1)) == 1);
  CHECK(u_free_part(w) == y0_var(c1) + w_basic(c1));
}

TEST_CASE("potential properties on generated arrangements") {
  for (uint64_t seed : {1, 4}) {
    for (int k = 1; k <= 3; ++k) {
      const Arrangement a = generate_arrangement(seed, k, GeneratorOptions{});
      const ScatteringDiagram d = build_diagram(a, DiagramOptions{});
      const Series w = potential_W_k0(d);
      CHECK(u_free_part(w) == w_basic(d.config()));
      for (const auto& line : enumerate_broken_lines(d, a.Q)) {
        CHECK(line.bends() <= k);
        CHECK(line.segments.front().coeff == 1);
        CHECK(line.segments.front().mono.x_total() == 1);
        uint32_t seen = 0;
        for (std::size_t i = 1; i < line.segments.size(); ++i) {
          const uint32_t m = d.walls()[line.segments[i].bend_wall].u_mask();
          CHECK((seen & m) == 0u);
          seen |= m;
        }
        CHECK(seen == line.final_segment().mono.u_mask());
      }
      for (const auto& r : semirigid_disks_at(d, a.Q)) CHECK(r.flexibility() == 1);
    }
  }
}

TEST_CASE("products of two disks") {
  const Arrangement a = generate_arrangement(3, 3, GeneratorOptions{});
  const ScatteringDiagram d = build_diagram(a, DiagramOptions{});
  const RingConfig& cfg = d.config();
  std::vector<std::pair<ExponentKey, Rational>> disks;
  for (const auto& r : semirigid_disks_at(d, a.Q))
    if (r.u_support) disks.emplace_back(r.mono, r.coeff);
  Series pairs(cfg);
  for (std::size_t i = 0; i < disks.size(); ++i)
    for (std::size_t j = i + 1; j < disks.size(); ++j)
      if ((disks[i].first.u_mask() & disks[j].first.u_mask()) == 0)
        if (auto m = combine(disks[i].first, disks[j].first, cfg)) {
          ExponentKey key = *m;
          key.hbar = -2;
          pairs.add_term(key, disks[i].second * disks[j].second);
        }
  Series got(cfg);
  const Series e = exp_potential_triples(d, a.Q);
  for (const auto& [key, c] : e.terms())
    if (key.hbar == -2) got.add_term(key, c);
  CHECK(got == pairs);
}

TEST_CASE("potential is locally constant and transforms across walls") {
  const Arrangement a = generate_arrangement(2, 2, GeneratorOptions{});
  const ScatteringDiagram d = build_diagram(a, DiagramOptions{});
  const Point tiny = make_point(1, 100000, 1, 77777);
  CHECK(potential_at(d, a.Q + tiny) == potential_W_k0(d));

  std::mt19937_64 rng(5);
  auto coord = [&] { return fraction(static_cast<long>(rng() % 2001) - 1000, 61); };
  int done = 0;
  for (int trial = 0; trial < 40 && done < 8; ++trial) {
    const Point p{coord(), coord()}, q{coord(), coord()};
    if (!off_supports(d, p) || !off_supports(d, q)) continue;
    Series moved;
    try {
      moved = path_automorphism(d, {p, q}, potential_at(d, p));
    } catch (const PreconditionError&) {
      continue;
    } catch (const GeneralityError&) {
      continue;
    }
    CHECK(moved == potential_at(d, q));
    ++done;
  }
  CHECK(done > 0);
}

TEST_CASE("broken line JSON") {
  const ScatteringDiagram d = one_point();
  const auto lines = enumerate_broken_lines(d, d.arrangement().Q);
  for (const auto& l : lines) {
    const auto j = to_json(l);
    CHECK(j["segments"].size() == l.segments.size());
    CHECK(j["segments"][0]["start"].is_null());
  }
}
