#pragma once

// Generality certificates and seeded arrangement generation.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "p2trop/scattering.hpp"

namespace p2trop {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GeneralityReport {
  bool general = true;
  std::vector<std::string> violations;
};

// Extra checks run against the probe diagram; they signal a violation by
// throwing GeneralityError.
using DiagramProbe = std::function<void(const ScatteringDiagram&)>;

struct ProbeOptions {
  int dmax = 2;
  int max_order = -1;
  bool singular_points = true;  // pairwise check of all wall intersections
  DiagramProbe extra;
};

GeneralityReport generality_check(const Arrangement& a, const ProbeOptions& opt);

struct GeneratorOptions {
  long box_lo = -8;
  long box_hi = 8;
  long max_denominator = 40;
  int retries = 200;
  ProbeOptions probe;
};

Arrangement generate_arrangement(uint64_t seed, int k, const GeneratorOptions& opt);

// Checks against the translated skeleton Q + R_{>=0} m_i.
void check_skeleton(const ScatteringDiagram& d);

}  // namespace p2trop
