#include "p2trop/coeffring.hpp"

#include <sstream>

namespace p2trop {

ExponentKey ExponentKey::xpow(int n0, int n1, int n2) {
  ExponentKey k;
  k.x = {static_cast<uint8_t>(n0), static_cast<uint8_t>(n1), static_cast<uint8_t>(n2)};
  return k;
}

int ExponentKey::u_count() const {
  int n = 0;
  for (int8_t j : u) n += (j >= 0);
  return n;
}

int ExponentKey::u_weight() const {
  int n = 0;
  for (int8_t j : u)
    if (j >= 0) n += j + 1;
  return n;
}

uint32_t ExponentKey::u_mask() const {
  uint32_t m = 0;
  for (int i = 0; i < kMaxPoints; ++i)
    if (u[i] >= 0) m |= (1u << i);
  return m;
}

std::vector<std::pair<int, int>> ExponentKey::u_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < kMaxPoints; ++i)
    if (u[i] >= 0) out.emplace_back(i + 1, u[i]);
  return out;
}

std::optional<ExponentKey> combine(const ExponentKey& a, const ExponentKey& b, const RingConfig& cfg) {
  ExponentKey r;
  for (int i = 0; i < 3; ++i) {
    int e = a.x[i] + b.x[i];
    if (e > cfg.xcap) return std::nullopt;
    r.x[i] = static_cast<uint8_t>(e);
  }
  for (int i = 0; i < kMaxPoints; ++i) {
    if (a.u[i] >= 0 && b.u[i] >= 0) return std::nullopt;
    r.u[i] = a.u[i] >= 0 ? a.u[i] : b.u[i];
  }
  int y = a.y0 + b.y0;
  if (y > cfg.mbar) return std::nullopt;
  r.y0 = static_cast<uint8_t>(y);
  r.hbar = static_cast<int16_t>(a.hbar + b.hbar);
  return r;
}

Rational Series::coefficient(const ExponentKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

bool Series::admissible(const ExponentKey& key) const {
  for (int i = 0; i < 3; ++i)
    if (key.x[i] > cfg_.xcap) return false;
  if (key.y0 > cfg_.mbar) return false;
  int top = cfg_.top_order();
  for (int i = 0; i < kMaxPoints; ++i)
    if (key.u[i] > top) return false;
  return true;
}

void Series::add_term(const ExponentKey& key, const Rational& c) {
  for (int i = cfg_.k; i < kMaxPoints; ++i)
    if (key.u[i] >= 0) throw ConfigError("u-factor names point " + std::to_string(i + 1) + " beyond k");
  if (sgn(c) == 0 || !admissible(key)) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

static void require_same(const RingConfig& a, const RingConfig& b) {
  if (!(a == b)) throw ConfigError("series over different ring configurations");
}

Series& Series::operator+=(const Series& other) {
  require_same(cfg_, other.cfg_);
  for (const auto& [k, c] : other.terms_) add_term(k, c);
  return *this;
}

Series& Series::operator-=(const Series& other) {
  require_same(cfg_, other.cfg_);
  for (const auto& [k, c] : other.terms_) add_term(k, -c);
  return *this;
}

Series& Series::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

Series operator+(Series a, const Series& b) { return a += b; }
Series operator-(Series a, const Series& b) { return a -= b; }
Series operator*(const Rational& c, Series a) { return a *= c; }
Series operator*(const Series& a, const Series& b) { return mul(a, b); }

Series mul(const Series& a, const Series& b) {
  require_same(a.config(), b.config());
  Series out(a.config());
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms())
      if (auto k = combine(ka, kb, a.config())) out.add_term(*k, ca * cb);
  return out;
}

Series multiply_monomial(const Series& a, const ExponentKey& key, const Rational& c) {
  Series out(a.config());
  for (const auto& [ka, ca] : a.terms())
    if (auto k = combine(ka, key, a.config())) out.add_term(*k, ca * c);
  return out;
}

Series exp_truncated(const Series& a, int shift) {
  if (sgn(a.coefficient(ExponentKey{})) != 0) throw PreconditionError("exp of a series with nonzero constant term");
  const RingConfig& cfg = a.config();
  Series result = constant(cfg, 1);
  Series power = constant(cfg, 1);
  for (int n = 1; !power.is_zero(); ++n) {
    if (n > 4 * kMaxExponent) throw PreconditionError("exp argument is not nilpotent at this truncation");
    power = mul(power, hbar_shift(a, shift));
    power *= fraction(1, n);
    result += power;
  }
  return result;
}

Series fundamental_operator(const Series& a) {
  Series out(a.config());
  int top = a.config().top_order();
  for (const auto& [k, c] : a.terms()) {
    for (int i = 0; i < kMaxPoints; ++i) {
      if (k.u[i] < 0 || k.u[i] >= top) continue;
      ExponentKey shifted = k;
      shifted.u[i] = static_cast<int8_t>(k.u[i] + 1);
      out.add_term(shifted, c);
    }
  }
  return out;
}

Series that_operator(const Series& a) {
  const RingConfig& cfg = a.config();
  Series out = a;
  Series cur = a;
  ExponentKey y;
  for (int j = 1; j <= cfg.mbar; ++j) {
    cur = fundamental_operator(cur);
    if (cur.is_zero()) break;
    y.y0 = static_cast<uint8_t>(j);
    out += multiply_monomial(cur, y, Rational(1) / Rational(factorial(j)));
  }
  return out;
}

Series constant(const RingConfig& cfg, const Rational& c) { return monomial(cfg, ExponentKey{}, c); }

Series monomial(const RingConfig& cfg, const ExponentKey& key, const Rational& c) {
  Series s(cfg);
  s.add_term(key, c);
  return s;
}

Series x_var(const RingConfig& cfg, int i) {
  ExponentKey k;
  k.x[i] = 1;
  return monomial(cfg, k);
}

Series u_var(const RingConfig& cfg, int point, int order) {
  if (point < 1 || point > cfg.k || order < 0) throw ConfigError("u index out of range");
  ExponentKey k;
  k.u[point - 1] = static_cast<int8_t>(order);
  return monomial(cfg, k);
}

Series y0_var(const RingConfig& cfg) {
  ExponentKey k;
  k.y0 = 1;
  return monomial(cfg, k);
}

Series y2_var(const RingConfig& cfg, int order) {
  Series s(cfg);
  if (order > cfg.top_order()) return s;
  for (int i = 1; i <= cfg.k; ++i) s += u_var(cfg, i, order);
  return s;
}

Series w_basic(const RingConfig& cfg) { return x_var(cfg, 0) + x_var(cfg, 1) + x_var(cfg, 2); }

Series u_free_part(const Series& a) {
  Series out(a.config());
  for (const auto& [k, c] : a.terms())
    if (!k.has_u()) out.add_term(k, c);
  return out;
}

Series without_points(const Series& a, uint32_t mask) {
  Series out(a.config());
  for (const auto& [k, c] : a.terms())
    if ((k.u_mask() & mask) == 0) out.add_term(k, c);
  return out;
}

Series with_config(const Series& a, const RingConfig& cfg) {
  Series out(cfg);
  for (const auto& [k, c] : a.terms()) out.add_term(k, c);
  return out;
}

Series hbar_shift(const Series& a, int shift) {
  if (shift == 0) return a;
  Series out(a.config());
  for (const auto& [k, c] : a.terms()) {
    ExponentKey s = k;
    s.hbar = static_cast<int16_t>(k.hbar + shift);
    out.add_term(s, c);
  }
  return out;
}

nlohmann::json to_json(const ExponentKey& key) {
  nlohmann::json u = nlohmann::json::array();
  for (auto [i, j] : key.u_pairs()) u.push_back({i, j});
  return {{"x", {key.x[0], key.x[1], key.x[2]}}, {"u", u}, {"y0", key.y0}, {"hbar", key.hbar}};
}

nlohmann::json to_json(const Series& s) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [k, c] : s.terms()) {
    nlohmann::json t = to_json(k);
    t["coeff"] = to_string(c);
    out.push_back(std::move(t));
  }
  return out;
}

Series series_from_json(const RingConfig& cfg, const nlohmann::json& j) {
  Series s(cfg);
  for (const auto& t : j) {
    ExponentKey k;
    for (int i = 0; i < 3; ++i) {
      int e = t.at("x").at(i).get<int>();
      if (e < 0 || e > kMaxExponent) throw ConfigError("x exponent out of range");
      k.x[i] = static_cast<uint8_t>(e);
    }
    for (const auto& p : t.at("u")) {
      int i = p.at(0).get<int>(), o = p.at(1).get<int>();
      if (i < 1 || i > kMaxPoints || o < 0 || o > 127 || k.u[i - 1] >= 0) throw ConfigError("bad u entry");
      k.u[i - 1] = static_cast<int8_t>(o);
    }
    int y = t.at("y0").get<int>();
    if (y < 0 || y > kMaxExponent) throw ConfigError("y0 exponent out of range");
    k.y0 = static_cast<uint8_t>(y);
    k.hbar = static_cast<int16_t>(t.at("hbar").get<int>());
    s.add_term(k, parse_rational(t.at("coeff").get<std::string>()));
  }
  return s;
}

std::string to_string(const Series& s) {
  if (s.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : s.terms()) {
    if (!first) os << " + ";
    first = false;
    os << to_string(c);
    for (int i = 0; i < 3; ++i)
      if (k.x[i]) os << "*x" << i << (k.x[i] > 1 ? "^" + std::to_string(k.x[i]) : "");
    for (auto [i, j] : k.u_pairs()) os << "*u" << i << "_" << j;
    if (k.y0) os << "*y0" << (k.y0 > 1 ? "^" + std::to_string(k.y0) : "");
    if (k.hbar) os << "*h^" << k.hbar;
  }
  return os.str();
}

}  // namespace p2trop
