#pragma once

// Truncated coefficient ring Q[T_Sigma] (x) r_{k,mbar}[hbar^-1].
//
// Generators: x_0, x_1, x_2 (monomials z^{t_i}), square-zero families
// u_{i,j} with u_{i,j} u_{i,j'} = 0, y_{0,0} truncated above mbar, and an
// integer power of hbar carried on every monomial.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "p2trop/rational.hpp"

namespace p2trop {

inline constexpr int kMaxPoints = 10;
inline constexpr int kMaxExponent = 60;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RingConfig {
  int k = 0;          // number of marked points
  int mbar = 0;       // truncation order for y_{0,0}
  int xcap = 12;      // each x-exponent is kept only while <= xcap
  int max_order = -1; // u_{i,j} = 0 for j > max_order; -1 means k-1

  int top_order() const { return max_order < 0 ? k - 1 : std::min(max_order, k - 1); }
  friend bool operator==(const RingConfig&, const RingConfig&) = default;
};

struct ExponentKey {
  std::array<uint8_t, 3> x{};
  // u[i-1] is the descendent order j of the factor u_{i,j}, or -1 if absent.
  std::array<int8_t, kMaxPoints> u{-1, -1, -1, -1, -1, -1, -1, -1, -1, -1};
  uint8_t y0 = 0;
  int16_t hbar = 0;

  static ExponentKey xpow(int n0, int n1, int n2);

  int u_count() const;          // number of u-factors
  int u_weight() const;         // sum of (j+1) over the factors, i.e. |r|
  uint32_t u_mask() const;      // bit (i-1) set when point i is used
  int x_total() const { return x[0] + x[1] + x[2]; }
  bool has_u() const { return u_mask() != 0; }
  std::vector<std::pair<int, int>> u_pairs() const;  // (i, j), i ascending

  auto operator<=>(const ExponentKey&) const = default;
  bool operator==(const ExponentKey&) const = default;
};

// Product of two monomials, or nullopt if it lies in the ideal or beyond the
// truncation of cfg.
std::optional<ExponentKey> combine(const ExponentKey& a, const ExponentKey& b, const RingConfig& cfg);

class Series {
 public:
  using Terms = std::map<ExponentKey, Rational>;

  Series() = default;
  explicit Series(const RingConfig& cfg) : cfg_(cfg) {}

  const RingConfig& config() const { return cfg_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(const ExponentKey& key) const;

  // True when the key survives the truncation (x-cap, y-cap, order cap).
  bool admissible(const ExponentKey& key) const;

  // Accumulates c * key. Truncated keys are silently dropped; keys naming a
  // point index beyond k raise ConfigError.
  void add_term(const ExponentKey& key, const Rational& c);

  Series& operator+=(const Series& other);
  Series& operator-=(const Series& other);
  Series& operator*=(const Rational& c);

  friend bool operator==(const Series& a, const Series& b) { return a.cfg_ == b.cfg_ && a.terms_ == b.terms_; }

 private:
  RingConfig cfg_;
  Terms terms_;
};

Series operator+(Series a, const Series& b);
Series operator-(Series a, const Series& b);
Series operator*(const Rational& c, Series a);
Series operator*(const Series& a, const Series& b);

Series mul(const Series& a, const Series& b);
Series multiply_monomial(const Series& a, const ExponentKey& key, const Rational& c);

// sum_{n>=0} a^n hbar^{n * hbar_shift} / n!
Series exp_truncated(const Series& a, int hbar_shift);

// O = sum u_{j,l} d/du_{j,l-1}
Series fundamental_operator(const Series& a);
// T = exp(y_{0,0} O), truncated at mbar
Series that_operator(const Series& a);

// Structural helpers.
Series constant(const RingConfig& cfg, const Rational& c);
Series monomial(const RingConfig& cfg, const ExponentKey& key, const Rational& c = Rational(1));
Series x_var(const RingConfig& cfg, int i);
Series u_var(const RingConfig& cfg, int point, int order);
Series y0_var(const RingConfig& cfg);
Series y2_var(const RingConfig& cfg, int order);  // sum_i u_{i,order}
Series w_basic(const RingConfig& cfg);           // x_0 + x_1 + x_2
Series u_free_part(const Series& a);              // u -> 0
Series without_points(const Series& a, uint32_t mask);  // drop terms touching mask
Series with_config(const Series& a, const RingConfig& cfg);  // re-truncate into cfg
Series hbar_shift(const Series& a, int shift);

nlohmann::json to_json(const ExponentKey& key);
nlohmann::json to_json(const Series& s);
Series series_from_json(const RingConfig& cfg, const nlohmann::json& j);
std::string to_string(const Series& s);

}  // namespace p2trop
