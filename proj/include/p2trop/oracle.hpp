#pragma once

// Classical genus-0 descendent Gromov-Witten invariants of P^2.
//
// Insertions are psi^a T_b with T_b the generator of H^{2b}. Values come
// from string, dilaton, divisor, topological recursion and the Kontsevich
// recursion for the primary counts N_d.

#include <map>
#include <string>
#include <vector>

#include "p2trop/rational.hpp"

namespace p2trop {

struct Insertion {
  int b = 0;  // cohomology class T_b
  int a = 0;  // psi power
  auto operator<=>(const Insertion&) const = default;
  bool operator==(const Insertion&) const = default;
};

struct GWKey {
  int d = 0;
  std::vector<Insertion> insertions;  // sorted

  static GWKey make(int d, std::vector<Insertion> ins);  // canonicalizes
  bool canonical() const;
  bool dimension_ok() const;
  auto operator<=>(const GWKey&) const = default;
  bool operator==(const GWKey&) const = default;
};

std::string to_string(const GWKey& k);
// Parses "psi^1 T2, T2, T0" or "T2*8"; raises std::invalid_argument.
std::vector<Insertion> parse_insertions(const std::string& text);

// Kontsevich numbers N_d (N_1 = 1).
Integer kontsevich(int d);

enum class Strategy { Primary, Alternate };

class ClassicalOracle {
 public:
  explicit ClassicalOracle(Strategy s = Strategy::Primary) : strategy_(s) {}
  Rational value(const GWKey& key);
  std::size_t memo_size() const { return memo_.size(); }

 private:
  Rational eval(const GWKey& key, bool allow_divisor);
  Rational trr(const GWKey& key, std::size_t pivot, std::size_t x1, std::size_t x2);

  Strategy strategy_;
  std::map<GWKey, Rational> memo_;
  std::map<GWKey, Rational> memo_nodiv_;
};

// Shared primary-strategy oracle.
Rational classical_invariant(const GWKey& key);

// Associativity of the small-plus-t2 quantum product up to degree dmax.
bool wdvv_check(int dmax, std::vector<std::string>* failures = nullptr);

// Both strategies agree on `count` random dimension-compatible keys.
bool reduction_order_check(uint64_t seed, int count, int dmax, int psimax, std::vector<std::string>* failures = nullptr);

}  // namespace p2trop
