#pragma once

// Descendent scattering diagrams D(A)_{k,0}: walls, wall-crossing
// automorphisms and the loop consistency check.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "p2trop/coeffring.hpp"
#include "p2trop/geometry.hpp"

namespace p2trop {

class GeneralityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Wall {
  Ray support;
  long weight = 1;
  ExponentKey mono;  // x-exponent m together with the u-product of c
  Rational coeff;    // rational multiplier of c
  int marked_origin = 0;  // l when Init is P_l, 0 for unmarked walls
  int parent1 = -1;
  int parent2 = -1;

  int round() const { return mono.u_count(); }
  uint32_t u_mask() const { return mono.u_mask(); }
  Series func(const RingConfig& cfg) const;
};

struct DiagramOptions {
  int dmax = 2;        // x-exponent cap per component
  int max_order = -1;  // highest descendent order kept, -1 means k-1
  bool check_generality = true;
};

// One support (base, primitive direction) carrying one or more walls.
struct Support {
  Ray ray;
  std::vector<int> walls;
  Point normal;    // rot90 of the direction
  Rational offset; // normal . base
  // floating-point copies, used only to reject far-off candidates early
  double base_d[2] = {0, 0};
  double offset_d = 0;
};

struct Crossing {
  Rational t;       // parameter along the query ray
  Point at;
  int support = -1;
  Rational drift;   // first-order change of t under the offset
};

// Crossings up to the first degenerate event (an Init point, a singular
// point, or a stretch along a support). Crossings at or after `block` are
// listed but may not be used.
struct CrossingList {
  std::vector<Crossing> items;
  std::optional<Rational> block;
  std::string reason;
  // supports met at the block without being listed as crossings (an Init
  // point on the path, or a support the path runs along)
  std::vector<int> block_supports;
};

struct SingularPoint {
  Point at;
  std::vector<int> through;  // walls containing the point in their interior
  std::vector<int> based;    // walls with Init at the point
  int marked = 0;            // l when the point is P_l
};

class ScatteringDiagram {
 public:
  ScatteringDiagram() = default;
  ScatteringDiagram(Arrangement arr, RingConfig cfg) : arr_(std::move(arr)), cfg_(cfg) {}

  const Arrangement& arrangement() const { return arr_; }
  const RingConfig& config() const { return cfg_; }
  const std::vector<Wall>& walls() const { return walls_; }
  const std::vector<Support>& supports() const { return supports_; }
  int support_of(int wall) const { return wall_support_[wall]; }

  int add_wall(Wall w);
  // Some wall on s1 and some wall on s2 use disjoint sets of marked points.
  // Walls sharing a point never bend the same broken line or scatter, so
  // coincidences between non-interacting supports are harmless.
  bool supports_interact(int s1, int s2) const;
  // Copy without the given wall; used for fault injection.
  ScatteringDiagram without_wall(int index) const;

  // Transverse crossings of base + t*dir, t > 0, with the supports, sorted
  // by t. Supports listed in skip are ignored. Passing through a wall's
  // Init, running along a support, or crossing interacting supports at the
  // same time raises GeneralityError.
  std::vector<Crossing> crossings(const Point& base, const Point& dir, const std::vector<bool>& skip) const;
  // With an offset, the path is read as base + eps*offset + t*dir for an
  // infinitesimal eps > 0: stretches along a support are not crossings,
  // passages through an Init point cross that wall only on the side the
  // offset points to, and simultaneous crossings are ordered. Crossings at
  // t = 0+ are listed only when start_crossings is set.
  CrossingList crossings_until_degenerate(const Point& base, const Point& dir, const std::vector<bool>& skip,
                                          const Point* offset = nullptr, bool start_crossings = false) const;
  std::vector<Crossing> crossings(const Point& base, Vec2 dir, const std::vector<bool>& skip) const {
    return crossings(base, to_point(dir), skip);
  }

  // Pairwise transverse interior intersections of supports plus unmarked
  // Init points, with the walls incident at each.
  std::vector<SingularPoint> singular_points() const;

 private:
  Arrangement arr_;
  RingConfig cfg_;
  std::vector<Wall> walls_;
  std::vector<Support> supports_;
  std::vector<int> wall_support_;
  std::map<std::pair<Point, Vec2>, int> support_index_;
};

std::vector<Wall> initial_rays(const Arrangement& a);

// Child wall at a transverse interior intersection x of two walls.
std::optional<Wall> scatter_unmarked(const Wall& w1, const Wall& w2, const Point& x, const RingConfig& cfg);

// Wall at P_l from disk data: a product term c*x^n of n joined disks.
std::optional<Wall> glue_at_marked(const Arrangement& a, int l, int n, const ExponentKey& disks, const Rational& c,
                                   const RingConfig& cfg);

ScatteringDiagram build_diagram(const Arrangement& a, const DiagramOptions& opt);

// theta_d applied to a series, with n the primitive normal chosen against
// the crossing direction.
Series wall_crossing(const Wall& w, const Point& travel, const Series& arg);

// Composite of wall-crossing automorphisms along a polyline.
Series path_automorphism(const ScatteringDiagram& d, const std::vector<Point>& path, const Series& arg);

// Loop automorphism around an unmarked point fixes x_0, x_1, x_2.
bool check_loop_identity(const ScatteringDiagram& d, const Point& p);

nlohmann::json to_json(const Wall& w);
nlohmann::json to_json(const ScatteringDiagram& d);

}  // namespace p2trop
