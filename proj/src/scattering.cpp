#include "p2trop/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "p2trop/brokenlines.hpp"

namespace p2trop {

namespace {

Rational dot(const Point& a, const Point& b) { return a.x * b.x + a.y * b.y; }

Rational linf(const Point& v) {
  Rational a = abs(v.x), b = abs(v.y);
  return a < b ? b : a;
}

Rational rmin(const Rational& a, const Rational& b) { return a < b ? a : b; }

Vec2 canonical_line_dir(Vec2 d) {
  if (d.x < 0 || (d.x == 0 && d.y < 0)) return -d;
  return d;
}

int marked_index(const Arrangement& a, const Point& p) {
  for (int l = 0; l < a.k(); ++l)
    if (a.P[l] == p) return l + 1;
  return 0;
}

}  // namespace

Series Wall::func(const RingConfig& cfg) const {
  Series s = constant(cfg, 1);
  s.add_term(mono, coeff);
  return s;
}

int ScatteringDiagram::add_wall(Wall w) {
  auto key = std::make_pair(w.support.base, w.support.dir);
  auto it = support_index_.find(key);
  int s;
  if (it == support_index_.end()) {
    Support sup;
    sup.ray = w.support;
    sup.normal = {Rational(-w.support.dir.y), Rational(w.support.dir.x)};
    sup.offset = dot(sup.normal, w.support.base);
    sup.base_d[0] = w.support.base.x.get_d();
    sup.base_d[1] = w.support.base.y.get_d();
    sup.offset_d = sup.offset.get_d();
    s = static_cast<int>(supports_.size());
    supports_.push_back(std::move(sup));
    support_index_.emplace(key, s);
  } else {
    s = it->second;
  }
  int idx = static_cast<int>(walls_.size());
  supports_[s].walls.push_back(idx);
  wall_support_.push_back(s);
  walls_.push_back(std::move(w));
  return idx;
}

bool ScatteringDiagram::supports_interact(int s1, int s2) const {
  for (int a : supports_[s1].walls)
    for (int b : supports_[s2].walls)
      if ((walls_[a].u_mask() & walls_[b].u_mask()) == 0) return true;
  return false;
}

ScatteringDiagram ScatteringDiagram::without_wall(int index) const {
  ScatteringDiagram out(arr_, cfg_);
  for (int i = 0; i < static_cast<int>(walls_.size()); ++i)
    if (i != index) out.add_wall(walls_[i]);
  return out;
}

CrossingList ScatteringDiagram::crossings_until_degenerate(const Point& base, const Point& dir,
                                                           const std::vector<bool>& skip, const Point* offset,
                                                           bool start_crossings) const {
  CrossingList out;
  auto block = [&](const Rational& t, std::string why, int support = -1) {
    if (!out.block || t < *out.block) {
      out.block = t;
      out.reason = std::move(why);
      out.block_supports.clear();
    }
    if (support >= 0 && t == *out.block) out.block_supports.push_back(support);
  };
  const Rational dd = dot(dir, dir);
  const int side_of_offset = offset ? sgn(wedge(dir, *offset)) : 0;
  const double bx = base.x.get_d(), by = base.y.get_d(), dx = dir.x.get_d(), dy = dir.y.get_d();
  for (int s = 0; s < static_cast<int>(supports_.size()); ++s) {
    if (!skip.empty() && skip[s]) continue;
    const Support& sup = supports_[s];
    {
      // Skip supports that are clearly behind the path or missed by it. The
      // margin dwarfs the rounding error, so borderline cases go exact.
      constexpr double kMargin = 1e-9;
      const double nx = -sup.ray.dir.y, ny = sup.ray.dir.x;
      const double nv = nx * dx + ny * dy;
      const double num = sup.offset_d - (nx * bx + ny * by);
      const double num_scale = std::abs(sup.offset_d) + std::abs(nx * bx) + std::abs(ny * by);
      const double nv_scale = std::abs(nx * dx) + std::abs(ny * dy);
      if (std::abs(nv) > kMargin * nv_scale && std::abs(num) > kMargin * num_scale) {
        const double t = num / nv;
        if (t < 0) continue;
        const double ex = bx + t * dx - sup.base_d[0], ey = by + t * dy - sup.base_d[1];
        const double side = ex * sup.ray.dir.x + ey * sup.ray.dir.y;
        const double side_scale = (std::abs(bx) + std::abs(t * dx) + std::abs(sup.base_d[0])) * std::abs(sup.ray.dir.x) +
                                  (std::abs(by) + std::abs(t * dy) + std::abs(sup.base_d[1])) * std::abs(sup.ray.dir.y);
        if (side < -kMargin * side_scale) continue;
      }
    }
    Rational nv = dot(sup.normal, dir);
    Rational num = sup.offset - dot(sup.normal, base);
    Point sd = to_point(sup.ray.dir);
    if (sgn(nv) == 0) {
      if (sgn(num) != 0) continue;
      // collinear with the support; a sideways offset keeps the path parallel
      if (side_of_offset != 0) continue;
      Rational t0 = dot(sup.ray.base - base, dir) / dd;
      if (sgn(dot(sd, dir)) > 0)
        block(sgn(t0) > 0 ? t0 : Rational(0), "path runs along a wall", s);
      else if (sgn(t0) > 0)
        block(Rational(0), "path runs along a wall", s);
      continue;
    }
    Rational t = num / nv;
    Rational drift = offset ? -dot(sup.normal, *offset) / nv : Rational(0);
    if (sgn(t) < 0) continue;
    if (sgn(t) == 0 && !(start_crossings && sgn(drift) > 0)) continue;
    Point at = base + t * dir;
    int side = sgn(dot(at - sup.ray.base, sd));
    if (side < 0) continue;
    if (side == 0 && !sup.ray.is_line) {
      // through the Init point: the shifted path meets the ray iff the ray
      // leaves towards the side of the offset
      if (side_of_offset == 0) {
        block(t, "path passes through the Init point " + to_string(at), s);
        continue;
      }
      if (sgn(wedge(dir, sd)) != side_of_offset) continue;
    }
    out.items.push_back({t, at, s, drift});
  }
  std::sort(out.items.begin(), out.items.end(), [](const Crossing& a, const Crossing& b) {
    if (a.t != b.t) return a.t < b.t;
    if (a.drift != b.drift) return a.drift < b.drift;
    return a.support < b.support;
  });
  for (std::size_t i = 0; i < out.items.size();) {
    std::size_t j = i + 1;
    while (j < out.items.size() && out.items[j].t == out.items[i].t && out.items[j].drift == out.items[i].drift) ++j;
    bool clash = false;
    for (std::size_t a = i; a < j; ++a)
      for (std::size_t b = a + 1; b < j; ++b) clash |= supports_interact(out.items[a].support, out.items[b].support);
    if (clash) block(out.items[i].t, "path passes through the singular point " + to_string(out.items[i].at));
    i = j;
  }
  return out;
}

std::vector<Crossing> ScatteringDiagram::crossings(const Point& base, const Point& dir,
                                                   const std::vector<bool>& skip) const {
  CrossingList cl = crossings_until_degenerate(base, dir, skip);
  if (cl.block) throw GeneralityError(cl.reason);
  return cl.items;
}

std::vector<SingularPoint> ScatteringDiagram::singular_points() const {
  std::map<Point, std::set<int>> through_supports;
  const int n = static_cast<int>(supports_.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (auto x = intersect(supports_[i].ray, supports_[j].ray)) {
        auto& set = through_supports[*x];
        set.insert(i);
        set.insert(j);
      }
  std::map<Point, std::set<int>> based_supports;
  for (int i = 0; i < n; ++i) based_supports[supports_[i].ray.base].insert(i);
  for (auto& [p, based] : based_supports) {
    auto& set = through_supports[p];
    for (int i = 0; i < n; ++i)
      if (!based.count(i) && in_interior(supports_[i].ray, p)) set.insert(i);
  }
  std::vector<SingularPoint> out;
  for (const auto& [p, sups] : through_supports) {
    SingularPoint sp;
    sp.at = p;
    sp.marked = marked_index(arr_, p);
    for (int s : sups)
      if (!(supports_[s].ray.base == p))
        for (int w : supports_[s].walls) sp.through.push_back(w);
    if (auto it = based_supports.find(p); it != based_supports.end())
      for (int s : it->second)
        for (int w : supports_[s].walls) sp.based.push_back(w);
    std::sort(sp.through.begin(), sp.through.end());
    std::sort(sp.based.begin(), sp.based.end());
    out.push_back(std::move(sp));
  }
  return out;
}

std::vector<Wall> initial_rays(const Arrangement& a) {
  std::vector<Wall> out;
  for (int l = 1; l <= a.k(); ++l) {
    for (int i = 0; i < 3; ++i) {
      Wall w;
      w.support = {a.P[l - 1], -kFan[i], false};
      w.mono.x[i] = 1;
      w.mono.u[l - 1] = 0;
      w.coeff = 1;
      w.marked_origin = l;
      out.push_back(w);
    }
  }
  return out;
}

std::optional<Wall> scatter_unmarked(const Wall& w1, const Wall& w2, const Point& x, const RingConfig& cfg) {
  long cross = wedge(w1.support.dir, w2.support.dir);
  if (cross == 0) return std::nullopt;
  if (!in_interior(w1.support, x) || !in_interior(w2.support, x))
    throw PreconditionError("point is not a transverse interior intersection");
  auto m = combine(w1.mono, w2.mono, cfg);
  if (!m) return std::nullopt;
  Series probe(cfg);
  if (!probe.admissible(*m)) return std::nullopt;
  Vec2 p3 = p_of(m->x);
  Wall child;
  child.weight = gcd_of(p3);
  child.support = {x, primitive(-p3), false};
  child.mono = *m;
  child.coeff = Rational(child.weight * std::abs(cross)) * w1.coeff * w2.coeff;
  return child;
}

std::optional<Wall> glue_at_marked(const Arrangement& a, int l, int n, const ExponentKey& disks, const Rational& c,
                                   const RingConfig& cfg) {
  if (l < 1 || l > a.k() || n < 1) throw PreconditionError("bad gluing data");
  if (disks.u[l - 1] >= 0) throw PreconditionError("disk uses the gluing point");
  Vec2 p = p_of(disks.x);
  if (p.x == 0 && p.y == 0) return std::nullopt;
  if (n - 1 > cfg.top_order()) return std::nullopt;
  Wall w;
  w.weight = gcd_of(p);
  w.support = {a.P[l - 1], primitive(-p), false};
  w.mono = disks;
  w.mono.u[l - 1] = static_cast<int8_t>(n - 1);
  w.mono.hbar = 0;
  w.mono.y0 = 0;
  w.coeff = Rational(w.weight) * c;
  w.marked_origin = l;
  Series probe(cfg);
  if (!probe.admissible(w.mono)) return std::nullopt;
  return w;
}

namespace {

void check_new_supports(const ScatteringDiagram& d, std::size_t first_new) {
  const auto& sups = d.supports();
  const auto& arr = d.arrangement();
  std::map<Point, std::vector<int>> based;
  for (std::size_t s = 0; s < sups.size(); ++s) based[sups[s].ray.base].push_back(static_cast<int>(s));
  for (std::size_t i = first_new; i < sups.size(); ++i) {
    const Ray& r = sups[i].ray;
    for (std::size_t j = 0; j < sups.size(); ++j) {
      if (j == i || sups[j].ray.base == r.base || !overlapping(r, sups[j].ray)) continue;
      if (d.supports_interact(static_cast<int>(i), static_cast<int>(j)))
        throw GeneralityError("collinear walls from " + to_string(r.base) + " and " + to_string(sups[j].ray.base));
    }
    for (const auto& [b, at_b] : based) {
      if (!in_interior(r, b)) continue;
      for (int s : at_b)
        if (d.supports_interact(static_cast<int>(i), s))
          throw GeneralityError("wall from " + to_string(r.base) + " passes through " + to_string(b));
    }
    for (const auto& p : arr.P)
      if (in_interior(r, p)) throw GeneralityError("wall passes through a marked point " + to_string(p));
  }
  // new Init points: at most two interacting lines may pass through
  std::set<Point> new_bases;
  for (std::size_t i = first_new; i < sups.size(); ++i) new_bases.insert(sups[i].ray.base);
  for (const auto& b : new_bases) {
    if (marked_index(arr, b)) continue;
    std::vector<int> through;
    for (std::size_t s = 0; s < sups.size(); ++s)
      if (in_interior(sups[s].ray, b)) through.push_back(static_cast<int>(s));
    std::set<Vec2> lines;
    for (int s : through)
      for (int t : through)
        if (canonical_line_dir(sups[s].ray.dir) != canonical_line_dir(sups[t].ray.dir) && d.supports_interact(s, t))
          lines.insert(canonical_line_dir(sups[s].ray.dir));
    if (lines.size() > 2) throw GeneralityError("three walls meet at " + to_string(b));
  }
}

}  // namespace

ScatteringDiagram build_diagram(const Arrangement& a, const DiagramOptions& opt) {
  if (a.k() > kMaxPoints) throw ConfigError("too many marked points");
  RingConfig cfg{a.k(), 0, opt.dmax, opt.max_order};
  ScatteringDiagram d(a, cfg);
  if (opt.check_generality) {
    std::set<Point> pts(a.P.begin(), a.P.end());
    pts.insert(a.Q);
    if (static_cast<int>(pts.size()) != a.k() + 1) throw GeneralityError("marked points are not distinct");
  }
  std::map<std::pair<int, int>, std::optional<Point>> meet;
  auto meeting = [&](int s1, int s2) -> const std::optional<Point>& {
    auto key = std::minmax(s1, s2);
    auto it = meet.find(key);
    if (it == meet.end())
      it = meet.emplace(key, intersect(d.supports()[key.first].ray, d.supports()[key.second].ray)).first;
    return it->second;
  };

  std::vector<std::vector<int>> by_round(a.k() + 1);
  for (int g = 1; g <= a.k(); ++g) {
    std::vector<Wall> fresh;
    // walls glued at the marked points
    for (int l = 1; l <= a.k(); ++l) {
      BrokenLineOptions bo;
      bo.exclude_based_at = l;
      bo.forbidden_mask = 1u << (l - 1);
      bo.max_u_count = g - 1;
      Series wl = potential_at(d, a.P[l - 1], bo);
      Series power = constant(cfg, 1);
      for (int n = 1; n - 1 <= cfg.top_order(); ++n) {
        Series next(cfg);
        Series prod = mul(power, wl);
        for (const auto& [k, c] : prod.terms())
          if (k.u_count() <= g - 1) next.add_term(k, c / n);
        power = std::move(next);
        if (power.is_zero()) break;
        for (const auto& [k, c] : power.terms())
          if (k.u_count() == g - 1)
            if (auto w = glue_at_marked(a, l, n, k, c, cfg)) fresh.push_back(*w);
      }
    }
    // children at unmarked intersections
    for (int r1 = 1; 2 * r1 <= g; ++r1) {
      int r2 = g - r1;
      const auto& A = by_round[r1];
      const auto& B = by_round[r2];
      for (std::size_t i = 0; i < A.size(); ++i) {
        for (std::size_t j = (r1 == r2 ? i + 1 : 0); j < B.size(); ++j) {
          const Wall& w1 = d.walls()[A[i]];
          const Wall& w2 = d.walls()[B[j]];
          if (w1.u_mask() & w2.u_mask()) continue;
          bool capped = false;
          for (int c = 0; c < 3; ++c) capped |= w1.mono.x[c] + w2.mono.x[c] > cfg.xcap;
          if (capped) continue;
          int s1 = d.support_of(A[i]), s2 = d.support_of(B[j]);
          if (s1 == s2) continue;
          const auto& x = meeting(s1, s2);
          if (!x) continue;
          if (opt.check_generality && marked_index(a, *x))
            throw GeneralityError("walls meet at a marked point " + to_string(*x));
          if (auto child = scatter_unmarked(w1, w2, *x, cfg)) {
            child->parent1 = A[i];
            child->parent2 = B[j];
            fresh.push_back(*child);
          }
        }
      }
    }
    std::size_t first_new = d.supports().size();
    for (auto& w : fresh) {
      int idx = d.add_wall(std::move(w));
      by_round[g].push_back(idx);
    }
    if (opt.check_generality) check_new_supports(d, first_new);
  }
  return d;
}

Series wall_crossing(const Wall& w, const Point& travel, const Series& arg) {
  Point n{Rational(-w.support.dir.y), Rational(w.support.dir.x)};
  int side = sgn(dot(n, travel));
  if (side == 0) throw PreconditionError("path is not transverse to the wall");
  if (side > 0) n = {-n.x, -n.y};
  Series out = arg;
  const RingConfig& cfg = arg.config();
  for (const auto& [k, c] : arg.terms()) {
    Vec2 p = p_of(k.x);
    Rational e = n.x * p.x + n.y * p.y;
    if (sgn(e) == 0) continue;
    if (auto m = combine(k, w.mono, cfg)) out.add_term(*m, c * e * w.coeff);
  }
  return out;
}

Series path_automorphism(const ScatteringDiagram& d, const std::vector<Point>& path, const Series& arg) {
  for (const auto& p : {path.front(), path.back()})
    for (const auto& s : d.supports())
      if (ray_parameter(s.ray, p)) throw PreconditionError("path endpoint lies on a wall");
  Series out = arg;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    Point dir = path[i + 1] - path[i];
    std::vector<Crossing> cs;
    try {
      cs = d.crossings(path[i], dir, {});
    } catch (const GeneralityError& e) {
      throw PreconditionError(std::string("path is not transverse: ") + e.what());
    }
    for (const auto& c : cs) {
      if (c.t > 1) break;
      if (c.t == 1) throw PreconditionError("path corner lies on a wall");
      for (int w : d.supports()[c.support].walls) out = wall_crossing(d.walls()[w], dir, out);
    }
  }
  return out;
}

bool check_loop_identity(const ScatteringDiagram& d, const Point& p) {
  if (marked_index(d.arrangement(), p)) throw PreconditionError("loops around marked points are not trivial");
  Rational eps(1);
  std::vector<Vec2> incident;
  for (const auto& s : d.supports()) {
    Point sd = to_point(s.ray.dir);
    Point rel = p - s.ray.base;
    if (sgn(wedge(sd, rel)) == 0) {
      if (!(s.ray.base == p)) eps = rmin(eps, linf(rel));
      if (s.ray.base == p || in_interior(s.ray, p)) incident.push_back(s.ray.dir);
    } else {
      Rational dist = abs(dot(s.normal, p) - s.offset) / (std::abs(s.ray.dir.x) + std::abs(s.ray.dir.y));
      eps = rmin(eps, dist);
    }
  }
  eps /= 2;
  static const Rational tilts[] = {fraction(2, 7), fraction(3, 11), fraction(5, 13), fraction(7, 17), fraction(1, 19)};
  for (const auto& a : tilts) {
    std::vector<Point> corners{{Rational(1), a}, {-a, Rational(1)}, {Rational(-1), -a}, {a, Rational(-1)}};
    bool ok = true;
    for (const auto& c : corners)
      for (Vec2 v : incident) ok &= sgn(wedge(c, to_point(v))) != 0;
    if (!ok) continue;
    std::vector<Point> loop;
    for (const auto& c : corners) loop.push_back(p + eps * c);
    loop.push_back(loop.front());
    for (int i = 0; i < 3; ++i) {
      Series x = x_var(d.config(), i);
      if (!(path_automorphism(d, loop, x) == x)) return false;
    }
    return true;
  }
  throw PreconditionError("no admissible loop around " + to_string(p));
}

nlohmann::json to_json(const Wall& w) {
  nlohmann::json j{{"base", to_json(w.support.base)},
                   {"direction", {w.support.dir.x, w.support.dir.y}},
                   {"weight", w.weight},
                   {"func", to_json(w.func(RingConfig{kMaxPoints, 0, kMaxExponent, -1}))},
                   {"marked_origin", nullptr}};
  if (w.marked_origin) j["marked_origin"] = w.marked_origin;
  return j;
}

nlohmann::json to_json(const ScatteringDiagram& d) {
  nlohmann::json walls = nlohmann::json::array();
  for (const auto& w : d.walls()) walls.push_back(to_json(w));
  nlohmann::json sing = nlohmann::json::array();
  for (const auto& s : d.singular_points()) sing.push_back(to_json(s.at));
  return {{"k", d.arrangement().k()},
          {"dmax", d.config().xcap},
          {"arrangement", to_json(d.arrangement())},
          {"walls", walls},
          {"singular_points", sing}};
}

}  // namespace p2trop
