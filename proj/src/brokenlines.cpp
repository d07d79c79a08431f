#include "p2trop/brokenlines.hpp"

namespace p2trop {

namespace {

struct Bend {
  int wall;
  Point at;
  Rational factor;
  std::array<uint8_t, 3> w_after;
};

class Search {
 public:
  Search(const ScatteringDiagram& d, const Point& endpoint, const BrokenLineOptions& opt)
      : d_(d), endpoint_(endpoint), opt_(opt) {
    const auto& sups = d.supports();
    // supports none of whose walls can take part are invisible
    skip_.assign(sups.size(), false);
    std::optional<Point> excluded;
    if (opt.exclude_based_at) excluded = d.arrangement().P.at(opt.exclude_based_at - 1);
    for (std::size_t s = 0; s < sups.size(); ++s) {
      if (excluded && sups[s].ray.base == *excluded) {
        skip_[s] = true;
        continue;
      }
      bool usable = false;
      for (int j : sups[s].walls) usable |= (d.walls()[j].u_mask() & opt.forbidden_mask) == 0;
      skip_[s] = !usable;
    }
    for (std::size_t s = 0; s < sups.size() && !opt.perturbation; ++s)
      if (!skip_[s] && ray_parameter(sups[s].ray, endpoint))
        throw PreconditionError("endpoint " + to_string(endpoint) + " lies on a wall");
  }

  std::vector<BrokenLine> run() {
    std::array<int, 3> cap{d_.config().xcap, d_.config().xcap, d_.config().xcap};
    if (opt_.cap) cap = *opt_.cap;
    for (int a = 0; a <= cap[0]; ++a)
      for (int b = 0; b <= cap[1]; ++b)
        for (int c = 0; c <= cap[2]; ++c) {
          Vec2 p = p_of(a, b, c);
          if (p.x == 0 && p.y == 0) continue;
          std::array<uint8_t, 3> w{static_cast<uint8_t>(a), static_cast<uint8_t>(b), static_cast<uint8_t>(c)};
          bends_.clear();
          dfs(endpoint_, opt_.perturbation, true, w, 0, 0);
        }
    return std::move(lines_);
  }

 private:
  static bool is_unit(const std::array<uint8_t, 3>& w) { return w[0] + w[1] + w[2] == 1; }

  // Exponent before a bend at the wall producing w, if that bend is allowed
  // and has a nonzero factor.
  std::optional<std::array<uint8_t, 3>> bend_source(const Wall& wall, const std::array<uint8_t, 3>& w, uint32_t mask,
                                                    int ucount) const {
    if (wall.u_mask() & (mask | opt_.forbidden_mask)) return std::nullopt;
    if (ucount + wall.round() > opt_.max_u_count) return std::nullopt;
    std::array<uint8_t, 3> prev;
    for (int i = 0; i < 3; ++i) {
      if (wall.mono.x[i] > w[i]) return std::nullopt;
      prev[i] = static_cast<uint8_t>(w[i] - wall.mono.x[i]);
    }
    const Vec2 pp = p_of(prev);
    if (pp.x == 0 && pp.y == 0) return std::nullopt;
    if (wedge(wall.support.dir, pp) == 0) return std::nullopt;
    return prev;
  }

  // offset: first-order displacement of the segment under the perturbation
  void dfs(const Point& x, const std::optional<Point>& offset, bool first, const std::array<uint8_t, 3>& w,
           uint32_t mask, int ucount) {
    if (is_unit(w)) {
      // no wall can bend a unit exponent, so this is the unbounded segment
      record(w);
      return;
    }
    const Point dir = to_point(p_of(w));
    // Only supports carrying a wall this segment or an earlier one could bend
    // at matter; exponents shrink and masks grow going backwards.
    const auto& sups = d_.supports();
    std::vector<bool> skip(skip_);
    for (std::size_t s = 0; s < sups.size(); ++s) {
      if (skip[s]) continue;
      bool usable = false;
      for (int j : sups[s].walls) {
        const Wall& wall = d_.walls()[j];
        if ((wall.u_mask() & (mask | opt_.forbidden_mask)) || ucount + wall.round() > opt_.max_u_count) continue;
        usable |= wall.mono.x[0] <= w[0] && wall.mono.x[1] <= w[1] && wall.mono.x[2] <= w[2];
        if (usable) break;
      }
      skip[s] = !usable;
    }
    CrossingList cl = d_.crossings_until_degenerate(x, dir, skip, offset ? &*offset : nullptr, offset && !first);
    // a bend available at the degenerate event would make the count depend
    // on how the event is resolved
    for (int s : cl.block_supports)
      for (int j : sups[s].walls)
        if (bend_source(d_.walls()[j], w, mask, ucount)) throw GeneralityError(cl.reason);
    for (const auto& c : cl.items) {
      bool beyond = cl.block && c.t >= *cl.block;
      std::optional<Point> next_offset;
      if (offset) {
        // the bend point slides along the wall
        Point wd = to_point(d_.supports()[c.support].ray.dir);
        next_offset = (wedge(dir, *offset) / wedge(dir, wd)) * wd;
      }
      for (int j : d_.supports()[c.support].walls) {
        const Wall& wall = d_.walls()[j];
        const auto prev = bend_source(wall, w, mask, ucount);
        if (!prev) continue;
        if (beyond) throw GeneralityError(cl.reason);
        const long e = std::abs(wedge(wall.support.dir, p_of(*prev)));
        bends_.push_back({j, c.at, Rational(e) * wall.coeff, w});
        dfs(c.at, next_offset, false, *prev, mask | wall.u_mask(), ucount + wall.round());
        bends_.pop_back();
      }
    }
  }

  void record(const std::array<uint8_t, 3>& w0) {
    BrokenLine line;
    line.endpoint = endpoint_;
    const RingConfig& cfg = d_.config();
    Segment seg;
    seg.w = w0;
    seg.mono.x = w0;
    seg.coeff = 1;
    line.segments.push_back(seg);
    for (auto it = bends_.rbegin(); it != bends_.rend(); ++it) {
      const Wall& wall = d_.walls()[it->wall];
      Segment next;
      next.w = it->w_after;
      auto m = combine(line.segments.back().mono, wall.mono, cfg);
      if (!m) return;  // truncated
      next.mono = *m;
      next.coeff = line.segments.back().coeff * it->factor;
      next.bend_wall = it->wall;
      next.start = it->at;
      line.segments.push_back(std::move(next));
    }
    lines_.push_back(std::move(line));
  }

 private:
  const ScatteringDiagram& d_;
  Point endpoint_;
  BrokenLineOptions opt_;
  std::vector<bool> skip_;
  std::vector<Bend> bends_;
  std::vector<BrokenLine> lines_;
};

}  // namespace

std::vector<BrokenLine> enumerate_broken_lines(const ScatteringDiagram& d, const Point& endpoint,
                                               const BrokenLineOptions& opt) {
  Search s(d, endpoint, opt);
  return s.run();
}

Series potential_at(const ScatteringDiagram& d, const Point& x, const BrokenLineOptions& opt) {
  Series w(d.config());
  for (const auto& line : enumerate_broken_lines(d, x, opt)) {
    const Segment& s = line.final_segment();
    w.add_term(s.mono, s.coeff);
  }
  return w;
}

Series potential_W_k0(const ScatteringDiagram& d) { return potential_at(d, d.arrangement().Q); }

Series potential_W_kmbar(const ScatteringDiagram& d, int mbar) {
  RingConfig cfg = d.config();
  cfg.mbar = mbar;
  return y0_var(cfg) + that_operator(with_config(potential_W_k0(d), cfg));
}

std::vector<SemirigidDiskRecord> semirigid_disks_at(const ScatteringDiagram& d, const Point& x,
                                                    const BrokenLineOptions& opt) {
  std::vector<SemirigidDiskRecord> out;
  for (const auto& line : enumerate_broken_lines(d, x, opt)) {
    const Segment& s = line.final_segment();
    SemirigidDiskRecord r;
    r.endpoint = x;
    r.mono = s.mono;
    r.coeff = s.coeff;
    r.direction = -p_of(s.w);
    r.u_support = s.mono.u_mask();
    r.degree = s.mono.x_total();
    out.push_back(r);
  }
  return out;
}

Series exp_potential_triples(const ScatteringDiagram& d, const Point& x, const BrokenLineOptions& opt) {
  Series w = potential_at(d, x, opt);
  return exp_truncated(w - w_basic(d.config()), -1);
}

nlohmann::json to_json(const BrokenLine& b) {
  nlohmann::json segs = nlohmann::json::array();
  for (const auto& s : b.segments) {
    nlohmann::json j{{"w", {s.w[0], s.w[1], s.w[2]}}, {"mono", to_json(s.mono)}, {"coeff", to_string(s.coeff)}};
    j["bend_wall"] = s.bend_wall >= 0 ? nlohmann::json(s.bend_wall) : nlohmann::json(nullptr);
    j["start"] = s.start ? to_json(*s.start) : nlohmann::json(nullptr);
    segs.push_back(std::move(j));
  }
  return {{"endpoint", to_json(b.endpoint)}, {"segments", segs}};
}

}  // namespace p2trop
