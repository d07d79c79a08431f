#include "p2trop/generality.hpp"

#include <map>
#include <random>
#include <set>

#include "p2trop/brokenlines.hpp"

namespace p2trop {

void check_skeleton(const ScatteringDiagram& d) {
  const Arrangement& a = d.arrangement();
  for (const auto& s : d.supports())
    if (ray_parameter(s.ray, a.Q)) throw GeneralityError("Q lies on a wall");
  for (int i = 0; i < 3; ++i) {
    Ray r{a.Q, kFan[i], false};
    for (const auto& p : a.P)
      if (in_interior(r, p)) throw GeneralityError("marked point " + to_string(p) + " on the skeleton");
    std::map<Point, std::vector<int>> hits;
    for (int s = 0; s < static_cast<int>(d.supports().size()); ++s) {
      const Ray& ray = d.supports()[s].ray;
      if (overlapping(ray, r)) throw GeneralityError("wall along the skeleton");
      if (in_interior(r, ray.base)) throw GeneralityError("wall Init on the skeleton");
      if (auto x = intersect(r, ray)) {
        auto& at = hits[*x];
        for (int t : at)
          if (d.supports_interact(s, t)) throw GeneralityError("singular point on the skeleton at " + to_string(*x));
        at.push_back(s);
      }
    }
  }
}

GeneralityReport generality_check(const Arrangement& a, const ProbeOptions& opt) {
  GeneralityReport rep;
  try {
    DiagramOptions dopt;
    dopt.dmax = opt.dmax;
    dopt.max_order = opt.max_order;
    ScatteringDiagram d = build_diagram(a, dopt);
    check_skeleton(d);
    if (opt.singular_points) {
      for (const auto& sp : d.singular_points()) {
        auto line_of = [&](int w) {
          Vec2 v = d.walls()[w].support.dir;
          return v.x < 0 || (v.x == 0 && v.y < 0) ? -v : v;
        };
        if (sp.marked && !sp.through.empty()) throw GeneralityError("wall through a marked point");
        // lines carrying a wall that interacts with a wall on another line
        std::vector<int> incident = sp.through;
        incident.insert(incident.end(), sp.based.begin(), sp.based.end());
        std::set<Vec2> lines;
        for (int w : sp.through)
          for (int o : incident)
            if (line_of(w) != line_of(o) && (d.walls()[w].u_mask() & d.walls()[o].u_mask()) == 0) lines.insert(line_of(w));
        if (lines.size() > 2) throw GeneralityError("three walls meet at " + to_string(sp.at));
      }
    }
    potential_at(d, a.Q);
    for (int l = 1; l <= a.k(); ++l) {
      BrokenLineOptions bo;
      bo.exclude_based_at = l;
      bo.forbidden_mask = 1u << (l - 1);
      potential_at(d, a.P[l - 1], bo);
    }
    if (opt.extra) opt.extra(d);
  } catch (const GeneralityError& e) {
    rep.general = false;
    rep.violations.push_back(e.what());
  } catch (const PreconditionError& e) {
    rep.general = false;
    rep.violations.push_back(e.what());
  }
  return rep;
}

Arrangement generate_arrangement(uint64_t seed, int k, const GeneratorOptions& opt) {
  if (k < 0 || k > kMaxPoints) throw ConfigError("k out of range");
  if (opt.box_hi <= opt.box_lo || opt.max_denominator < 1) throw ConfigError("bad bounding box");
  std::mt19937_64 rng(seed);
  auto draw = [&]() -> Rational {
    uint64_t q = 1 + rng() % static_cast<uint64_t>(opt.max_denominator);
    uint64_t span = static_cast<uint64_t>(opt.box_hi - opt.box_lo) * q + 1;
    long num = opt.box_lo * static_cast<long>(q) + static_cast<long>(rng() % span);
    return fraction(num, static_cast<long>(q));
  };
  for (int attempt = 0; attempt < opt.retries; ++attempt) {
    Arrangement a;
    a.seed = seed;
    a.Q = {draw(), draw()};
    for (int i = 0; i < k; ++i) a.P.push_back({draw(), draw()});
    std::set<Point> pts(a.P.begin(), a.P.end());
    pts.insert(a.Q);
    if (static_cast<int>(pts.size()) != k + 1) continue;
    if (generality_check(a, opt.probe).general) {
      a.general = true;
      return a;
    }
  }
  throw GenerationError("no general arrangement found within the retry budget");
}

}  // namespace p2trop
