#pragma once

// Classical side of the mirror statement: Givental's J function, the mirror
// map K_i, the substituted J-function JJ = Phi(J) and the generating function
// TT of descendent invariants, all truncated by YTruncation.

#include <array>
#include <string>
#include <vector>

#include "p2trop/yseries.hpp"

namespace p2trop {

// J with y~_0, y~_1, y~_2 stored as y_{0,0}, y_{1,0}, y_{2,0} (psi = 1 layout),
// built from the closed formula with <T_2^n, psi^nu T_{2-i}>_d coefficients.
CohomologySeries j_function(const YTruncation& t);
// T_0 + sum (1/w!) <T_{2-i}/(hbar - psi), T_0, gamma^w>_d T_i with
// gamma = T_0 y~_0 + T_1 y~_1 + T_2 y~_2.
CohomologySeries j_function_axiom(const YTruncation& t);

// K_i = sum_{d, w >= 0} (1/w!) <T_i, T_0, gamma_c^w>_d.
YPoly mirror_K(int i, const YTruncation& t);
// Part of K_i coming from degree-d invariants.
YPoly degree_part(const YPoly& K, int i, int d);

CohomologySeries big_J(const YTruncation& t);
CohomologySeries big_T(const YTruncation& t);

Rational grading(const YKey& k, int cls);
// Every nonzero term has nonnegative integral grading.
bool grading_check(const CohomologySeries& s, std::vector<std::string>* failures = nullptr);

// sum_j (d S / d y_{j,0}) K_{2-j} = E(S) at truncation t.
bool euler_identity_holds(const CohomologySeries& s, const std::array<YPoly, 3>& K, const YTruncation& t,
                          std::vector<std::string>* failures = nullptr);
// The identity for both TT and JJ.
bool euler_identity_check(const YTruncation& t, std::vector<std::string>* failures = nullptr);

bool series_equal(const CohomologySeries& a, const CohomologySeries& b, std::vector<std::string>* failures = nullptr);
bool series_equal(const YPoly& a, const YPoly& b, int cls, std::vector<std::string>* failures = nullptr);

// Range of point-ring terms a tropical computation determines.
struct PointWindow {
  int k = 0;       // number of marked points
  int dmax = 2;
  int wmax = 4;    // y-factors, counting each used point as one
  int mbar = 2;    // T_0 insertions available to the engine
  int order = 2;   // largest r_i
  bool contains(const UKey& u, int cls) const;
};

// Compares a point-ring series against the image of a y-series inside w.
bool point_ring_equal(const UPoly& trop, const YPoly& cl, int cls, const PointWindow& w,
                      std::vector<std::string>* failures = nullptr);

}  // namespace p2trop
