#pragma once

// Descendent tropical invariants <psi^{a_1} P_{r{1}}, ..., T_{0,tr}^m, psi^nu S_i(A)>_{0,d}
// computed by gluing semirigid disks (broken lines) and rigid walls at the
// finitely many candidate positions of the x-vertex.

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "p2trop/brokenlines.hpp"
#include "p2trop/oracle.hpp"
#include "p2trop/yseries.hpp"

namespace p2trop {

// r = (r_1, ..., r_k); point i carries psi^{r_i - 1} when r_i > 0.
struct RVector {
  std::vector<int> r;

  int count() const;  // #(r)
  int total() const;  // |r|
  int position(int i) const;  // r{i}, 1-based, i-th nonzero entry
  int value(int i) const;     // r(i)
  bool leq(const RVector& o) const;        // entrywise <=
  bool dominated_by(const RVector& o) const;  // this < o with equal support
  auto operator<=>(const RVector&) const = default;
  bool operator==(const RVector&) const = default;
};

RVector parse_rvector(const std::string& text);  // "2,1,1"
std::string to_string(const RVector& r);

struct DescendentKey {
  int d = 1;
  RVector r;
  int m = 0;    // number of T_{0,tr} insertions
  int nu = 0;   // psi-power at the x-marking
  int cls = 0;  // S_0(A), S_1(A) or S_2(A)

  bool compatible() const { return 3 * d - nu + m - r.total() + cls == 2; }
  // <psi^{r_j-1} T_2 ..., T_0^m, psi^nu T_{2-cls}>_d
  GWKey classical() const;
  auto operator<=>(const DescendentKey&) const = default;
  bool operator==(const DescendentKey&) const = default;
};

std::string to_string(const DescendentKey& k);

struct TropResult {
  DescendentKey key;
  Rational value;
  std::map<std::string, Rational> sectors;  // "Q", "rho_i", "sigma_j"
  uint64_t seed = 0;
};

nlohmann::json to_json(const TropResult& r);

// Vertex weights at the x-vertex with n_i outgoing pure rays in direction m_i.
Rational mult_vertex(int level, int n0, int n1, int n2);

struct InvariantOptions {
  int dmax = 2;        // largest degree computed
  int mbar = 2;        // largest number of T_{0,tr} insertions
  int max_order = -1;  // largest psi-order at marked points, -1 means k-1
  // Displacement direction resolving disks that end on walls.
  Point perturbation{Rational(1), fraction(809, 1309)};
  // Multiplies Mult^1 everywhere; anything but 1 is a fault injection.
  Rational mult1_scale = 1;
  // Bit i set: assemble the series of S_i(A). Only S_0 is needed for
  // primary counts, and the other classes dominate the cost.
  unsigned classes = 7u;
};

// Holds the diagram of an arrangement and the generating series of all
// invariants up to the truncation. The series for class i and sector s is
//   sum value(d, r, m, nu) x^{(d,d,d)} u_r y_0^m hbar^{-(nu+2)} / m!.
class TropicalEngine {
 public:
  TropicalEngine(const Arrangement& a, const InvariantOptions& opt);
  // Reuses a diagram built with dmax and max_order matching opt.
  TropicalEngine(ScatteringDiagram d, const InvariantOptions& opt);

  const ScatteringDiagram& diagram() const { return diagram_; }
  const InvariantOptions& options() const { return opt_; }
  const RingConfig& ring() const { return cfg_; }
  const Series& series(int cls, const std::string& sector) const;
  std::vector<std::string> sectors(int cls) const;

  TropResult value(const DescendentKey& key) const;

 private:
  void build();
  void add_at_Q();
  void add_on_skeleton();
  void add_unmarked_singular();
  void add_marked();
  Series& slot(int cls, const std::string& sector);

  Arrangement arr_;
  InvariantOptions opt_;
  RingConfig cfg_;
  ScatteringDiagram diagram_;
  std::map<std::pair<int, std::string>, Series> raw_;    // before the T_0 dressing
  std::map<std::pair<int, std::string>, Series> marked_; // already dressed
  std::map<std::pair<int, std::string>, Series> final_;
};

// Seeded arrangement that is general for every evaluation the engine makes.
TropicalEngine generate_engine(uint64_t seed, int k, const InvariantOptions& opt);

TropResult tropical_invariant(const Arrangement& a, const DescendentKey& key, const InvariantOptions& opt = {});

// value(key) = sum_j value(r_j - 1, m - 1) + value(nu - 1, m - 1)
bool check_tropfun(const TropicalEngine& e, const DescendentKey& key);

// All compatible keys with 1 <= d <= dmax, r in {0..order+1}^k, m <= mbar.
std::vector<DescendentKey> compatible_keys(int k, const InvariantOptions& opt);
std::vector<TropResult> invariant_table(const TropicalEngine& e);

// Normalized generating function L_j with e^{d y_{1,0}} kept as the formal
// marker d. Layout [d, nu, j, l, r_1, ..., r_k] for
// e^{d y_{1,0}} hbar^{-nu} y_{0,0}^j y_{1,0}^l u_r. Terms with more than
// wmax factors (y's and used points) are dropped.
UPoly generating_L(const TropicalEngine& e, int j, int wmax);
// (phi_0, phi_1, phi_2) in the same layout.
std::array<UPoly, 3> t_trop(const TropicalEngine& e, int wmax);
// Expands e^{d y_{1,0}}; the result has layout [nu, j, l, r_1, ..., r_k].
UPoly expand_degree_marker(const UPoly& p, int wmax);

}  // namespace p2trop
