#pragma once

// Truncated polynomials in hbar^{-1}, y_{0,0}, y_{1,0}, y_{2,0}, ..., y_{2,P-1}
// with values in H^*(P^2), and their images in the point ring where
// y_{2,j} becomes sum_i u_{i,j}.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "p2trop/rational.hpp"

namespace p2trop {

struct YTruncation {
  int dmax = 2;  // largest curve degree carried by a monomial
  int wmax = 4;  // largest number of y-factors in a monomial
  int psi = 3;   // y_{2,j} exists for j < psi
};

// Exponent layout [nu, j, l, a_0, ..., a_{psi-1}] for
// hbar^{-nu} y_{0,0}^j y_{1,0}^l prod_m y_{2,m}^{a_m}.
using YKey = std::vector<int>;
using YPoly = std::map<YKey, Rational>;
// T_0, T_1, T_2 components.
using CohomologySeries = std::array<YPoly, 3>;

enum YVar { kNu = 0, kY00 = 1, kY10 = 2, kY20 = 3 };

YKey ykey(int psi);  // all-zero key
int ycount(const YKey& k);
// 3 * (nu - j - cls + sum_m a_m (m + 1)); the curve degree of the term times 3.
int weight3(const YKey& k, int cls);
// 3 * gr, with gr = weight + sum_{m > 0} a_m.
int gr3(const YKey& k, int cls);

void add_term(YPoly& p, const YKey& k, const Rational& c);
void add_into(YPoly& p, const YPoly& q, const Rational& scale = 1);
YPoly ymul(const YPoly& a, const YPoly& b, const YTruncation& t);
YPoly yderiv(const YPoly& p, int var);   // d/dy for var >= kY00
YPoly yeuler(const YPoly& p);            // sum_v y_v d/dy_v
YPoly yeuler_positive(const YPoly& p);   // sum_{m > 0} y_{2,m} d/dy_{2,m}
// Drops terms of degree above dmax or with too many y-factors.
YPoly ytruncate(const YPoly& p, int cls, const YTruncation& t);

std::string to_string(const YKey& k);

// Point ring image with k points. Layout [nu, j, l, r_1, ..., r_k] where
// point i carries psi^{r_i - 1} when r_i > 0.
using UKey = std::vector<int>;
using UPoly = std::map<UKey, Rational>;

UPoly to_point_ring(const YPoly& p, int k);
std::string to_string_u(const UKey& k);

}  // namespace p2trop
