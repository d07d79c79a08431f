#pragma once

// Broken lines, semirigid disks and the descendent Landau-Ginzburg
// potentials W_{k,0} and W_{k,mbar}.

#include <array>
#include <optional>
#include <vector>

#include "p2trop/scattering.hpp"

namespace p2trop {

struct BrokenLineOptions {
  int exclude_based_at = 0;  // ignore walls with Init = P_l
  uint32_t forbidden_mask = 0;  // never bend at walls using these points
  std::optional<std::array<int, 3>> cap;  // final exponent bound, default xcap
  int max_u_count = kMaxPoints;
  // Endpoint displacement eps*v (eps infinitesimal) used to resolve the
  // degenerate events forced when the endpoint sits on walls. The endpoint
  // may then lie on supports; bends exactly at the endpoint are excluded.
  std::optional<Point> perturbation;
};

struct Segment {
  std::array<uint8_t, 3> w{};  // x-exponent carried by the segment
  ExponentKey mono;            // full monomial c_i z^{w_i} without coefficient
  Rational coeff;
  int bend_wall = -1;          // wall bent at when this segment begins
  std::optional<Point> start;  // bend point; empty for the unbounded segment
};

struct BrokenLine {
  Point endpoint;
  std::vector<Segment> segments;  // in travel order

  const Segment& final_segment() const { return segments.back(); }
  int bends() const { return static_cast<int>(segments.size()) - 1; }
};

struct SemirigidDiskRecord {
  Point endpoint;
  ExponentKey mono;
  Rational coeff;
  Vec2 direction;     // m(D) = -p(Delta)
  uint32_t u_support = 0;
  int degree = 0;     // total x-degree
  int flexibility() const { return degree - mono.u_weight(); }
};

std::vector<BrokenLine> enumerate_broken_lines(const ScatteringDiagram& d, const Point& endpoint,
                                               const BrokenLineOptions& opt = {});

Series potential_at(const ScatteringDiagram& d, const Point& x, const BrokenLineOptions& opt = {});
Series potential_W_k0(const ScatteringDiagram& d);
// W_{k,mbar} = y_{0,0} + T(W_{k,0}) in the ring with truncation mbar.
Series potential_W_kmbar(const ScatteringDiagram& d, int mbar);

std::vector<SemirigidDiskRecord> semirigid_disks_at(const ScatteringDiagram& d, const Point& x,
                                                    const BrokenLineOptions& opt = {});

// exp((W_{k,0}(x) - W_basic)/hbar)
Series exp_potential_triples(const ScatteringDiagram& d, const Point& x, const BrokenLineOptions& opt = {});

nlohmann::json to_json(const BrokenLine& b);

}  // namespace p2trop
