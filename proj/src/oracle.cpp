#include "p2trop/oracle.hpp"

#include <algorithm>
#include <random>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace p2trop {

GWKey GWKey::make(int d, std::vector<Insertion> ins) {
  std::sort(ins.begin(), ins.end());
  return {d, std::move(ins)};
}

bool GWKey::canonical() const {
  if (d < 0) return false;
  for (const auto& i : insertions)
    if (i.b < 0 || i.b > 2 || i.a < 0) return false;
  return std::is_sorted(insertions.begin(), insertions.end());
}

bool GWKey::dimension_ok() const {
  long s = 0;
  for (const auto& i : insertions) s += i.a + i.b;
  return s == 3L * d + static_cast<long>(insertions.size()) - 1;
}

std::string to_string(const GWKey& k) {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < k.insertions.size(); ++i) {
    if (i) os << ", ";
    const auto& x = k.insertions[i];
    if (x.a == 1) os << "psi ";
    if (x.a > 1) os << "psi^" << x.a << " ";
    os << "T" << x.b;
  }
  os << ">_" << k.d;
  return os.str();
}

std::vector<Insertion> parse_insertions(const std::string& text) {
  static const std::regex item(R"(^\s*(?:psi(?:\^(\d+))?\s*)?T([0-2])\s*(?:\*\s*(\d+))?\s*$)");
  std::vector<Insertion> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::smatch m;
    if (!std::regex_match(tok, m, item)) throw std::invalid_argument("cannot parse insertion '" + tok + "'");
    Insertion ins;
    ins.b = std::stoi(m[2]);
    ins.a = tok.find("psi") == std::string::npos ? 0 : (m[1].matched ? std::stoi(m[1]) : 1);
    int copies = m[3].matched ? std::stoi(m[3]) : 1;
    if (copies < 1 || copies > 64) throw std::invalid_argument("bad repetition count");
    for (int c = 0; c < copies; ++c) out.push_back(ins);
  }
  return out;
}

Integer kontsevich(int d) {
  static std::vector<Integer> memo{Integer(0), Integer(1)};
  if (d < 1) throw std::domain_error("N_d needs d >= 1");
  while (static_cast<int>(memo.size()) <= d) {
    int e = static_cast<int>(memo.size());
    Integer n = 0;
    for (int d1 = 1; d1 < e; ++d1) {
      int d2 = e - d1;
      n += memo[d1] * memo[d2] * d1 * d1 * d2 *
           (Integer(d2) * binomial(3 * e - 4, 3 * d1 - 2) - Integer(d1) * binomial(3 * e - 4, 3 * d1 - 1));
    }
    memo.push_back(n);
  }
  return memo[d];
}

namespace {

std::vector<Insertion> without(const std::vector<Insertion>& v, std::size_t i) {
  std::vector<Insertion> out = v;
  out.erase(out.begin() + static_cast<long>(i));
  return out;
}

std::ptrdiff_t find_insertion(const std::vector<Insertion>& v, Insertion x, bool last) {
  if (last) {
    for (std::size_t i = v.size(); i-- > 0;)
      if (v[i] == x) return static_cast<std::ptrdiff_t>(i);
  } else {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] == x) return static_cast<std::ptrdiff_t>(i);
  }
  return -1;
}

}  // namespace

Rational ClassicalOracle::value(const GWKey& key) {
  if (!key.canonical()) throw std::invalid_argument("non-canonical key " + to_string(key));
  return eval(key, true);
}

Rational ClassicalOracle::eval(const GWKey& key, bool allow_divisor) {
  if (!key.dimension_ok()) return 0;
  const auto& ins = key.insertions;
  const int n = static_cast<int>(ins.size());
  const int d = key.d;
  if (d == 0) {
    if (n < 3) return 0;
    int sb = 0;
    Rational v(factorial(n - 3));
    for (const auto& i : ins) {
      sb += i.b;
      v /= Rational(factorial(i.a));
    }
    return sb == 2 ? v : Rational(0);
  }
  auto& memo = allow_divisor ? memo_ : memo_nodiv_;
  if (auto it = memo.find(key); it != memo.end()) return it->second;

  const bool alt = strategy_ == Strategy::Alternate;
  auto string_rule = [&](std::ptrdiff_t pos) -> Rational {
    auto rest = without(ins, static_cast<std::size_t>(pos));
    Rational v = 0;
    for (std::size_t j = 0; j < rest.size(); ++j) {
      if (rest[j].a == 0) continue;
      auto r = rest;
      r[j].a -= 1;
      v += eval(GWKey::make(d, r), true);
    }
    return v;
  };
  auto dilaton_rule = [&](std::ptrdiff_t pos) -> Rational {
    auto rest = without(ins, static_cast<std::size_t>(pos));
    return Rational(n - 3) * eval(GWKey::make(d, rest), true);
  };
  auto divisor_corrections = [&](const std::vector<Insertion>& rest) -> Rational {
    Rational v = 0;
    for (std::size_t j = 0; j < rest.size(); ++j) {
      if (rest[j].a == 0 || rest[j].b == 2) continue;
      auto r = rest;
      r[j].a -= 1;
      r[j].b += 1;
      v += eval(GWKey::make(d, r), true);
    }
    return v;
  };
  auto divisor_rule = [&](std::ptrdiff_t pos) -> Rational {
    auto rest = without(ins, static_cast<std::size_t>(pos));
    return Rational(d) * eval(GWKey::make(d, rest), true) + divisor_corrections(rest);
  };

  Rational result;
  bool done = false;
  std::ptrdiff_t pos_string = find_insertion(ins, {0, 0}, alt);
  std::ptrdiff_t pos_dil = find_insertion(ins, {0, 1}, alt);
  std::ptrdiff_t pos_div = allow_divisor ? find_insertion(ins, {1, 0}, alt) : -1;
  if (!alt) {
    if (pos_string >= 0) result = string_rule(pos_string), done = true;
    else if (pos_dil >= 0) result = dilaton_rule(pos_dil), done = true;
    else if (pos_div >= 0) result = divisor_rule(pos_div), done = true;
  } else {
    if (pos_div >= 0) result = divisor_rule(pos_div), done = true;
    else if (pos_dil >= 0) result = dilaton_rule(pos_dil), done = true;
    else if (pos_string >= 0) result = string_rule(pos_string), done = true;
  }
  if (!done) {
    bool all_points = std::all_of(ins.begin(), ins.end(), [](const Insertion& i) { return i.b == 2 && i.a == 0; });
    if (all_points) {
      result = n == 3 * d - 1 ? Rational(kontsevich(d)) : Rational(0);
    } else {
      // pivot: an insertion of maximal psi power
      std::size_t pivot = 0;
      for (std::size_t i = 0; i < ins.size(); ++i) {
        bool better = alt ? ins[i].a >= ins[pivot].a : ins[i].a > ins[pivot].a;
        if (better) pivot = i;
      }
      if (ins[pivot].a == 0) throw std::logic_error("no reduction applies to " + to_string(key));
      if (n >= 3) {
        std::vector<std::size_t> others;
        for (std::size_t i = 0; i < ins.size(); ++i)
          if (i != pivot) others.push_back(i);
        if (alt) std::reverse(others.begin(), others.end());
        result = trr(key, pivot, others[0], others[1]);
      } else {
        // invert the divisor equation on <T_1, X>
        auto padded = ins;
        padded.push_back({1, 0});
        Rational top = eval(GWKey::make(d, padded), false);
        result = (top - divisor_corrections(ins)) / d;
      }
    }
  }
  memo.emplace(key, result);
  return result;
}

Rational ClassicalOracle::trr(const GWKey& key, std::size_t pivot, std::size_t x1, std::size_t x2) {
  const auto& ins = key.insertions;
  std::vector<Insertion> rest;
  for (std::size_t i = 0; i < ins.size(); ++i)
    if (i != pivot && i != x1 && i != x2) rest.push_back(ins[i]);
  Insertion lowered = ins[pivot];
  lowered.a -= 1;
  Rational v = 0;
  const std::size_t m = rest.size();
  for (int d1 = 0; d1 <= key.d; ++d1) {
    int d2 = key.d - d1;
    for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
      std::vector<Insertion> s1{lowered}, s2{ins[x1], ins[x2]};
      for (std::size_t j = 0; j < m; ++j) (mask >> j & 1 ? s1 : s2).push_back(rest[j]);
      for (int e = 0; e <= 2; ++e) {
        auto f1 = s1;
        f1.push_back({e, 0});
        GWKey k1 = GWKey::make(d1, f1);
        if (!k1.dimension_ok()) continue;
        auto f2 = s2;
        f2.push_back({2 - e, 0});
        GWKey k2 = GWKey::make(d2, f2);
        if (!k2.dimension_ok()) continue;
        Rational a = eval(k1, true);
        if (sgn(a) == 0) continue;
        v += a * eval(k2, true);
      }
    }
  }
  return v;
}

Rational classical_invariant(const GWKey& key) {
  static ClassicalOracle oracle;
  return oracle.value(key);
}

namespace {

// Polynomial in q (degree) and t (the T_2 coordinate) with Rational coefficients.
using QT = std::map<std::pair<int, int>, Rational>;

QT qt_mul(const QT& a, const QT& b, int dmax) {
  QT out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) {
      int d = ka.first + kb.first;
      if (d > dmax) continue;
      out[{d, ka.second + kb.second}] += ca * cb;
    }
  for (auto it = out.begin(); it != out.end();) it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace

bool wdvv_check(int dmax, std::vector<std::string>* failures) {
  // Phi_{abc} = sum_{d,n} <T_a T_b T_c T_2^n>_d q^d t^n / n!
  QT phi[3][3][3];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d <= dmax; ++d) {
          int n = 3 * d + 2 - (a + b + c);
          if (n < 0) continue;
          std::vector<Insertion> ins{{a, 0}, {b, 0}, {c, 0}};
          for (int j = 0; j < n; ++j) ins.push_back({2, 0});
          Rational v = classical_invariant(GWKey::make(d, ins)) / Rational(factorial(n));
          if (sgn(v) != 0) phi[a][b][c][{d, n}] = v;
        }
  // (T_a * T_b) * T_c = sum_e sum_f Phi_{abe} Phi_{(2-e) c f} T_{2-f}
  bool ok = true;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int f = 0; f < 3; ++f) {
          QT lhs, rhs;
          for (int e = 0; e < 3; ++e) {
            for (const auto& [k, v] : qt_mul(phi[a][b][e], phi[2 - e][c][f], dmax)) lhs[k] += v;
            for (const auto& [k, v] : qt_mul(phi[b][c][e], phi[a][2 - e][f], dmax)) rhs[k] += v;
          }
          for (auto* m : {&lhs, &rhs})
            for (auto it = m->begin(); it != m->end();) it = sgn(it->second) == 0 ? m->erase(it) : std::next(it);
          if (lhs != rhs) {
            ok = false;
            if (failures)
              failures->push_back("associativity fails for a=" + std::to_string(a) + " b=" + std::to_string(b) +
                                  " c=" + std::to_string(c) + " f=" + std::to_string(f));
          }
        }
  return ok;
}

bool reduction_order_check(uint64_t seed, int count, int dmax, int psimax, std::vector<std::string>* failures) {
  std::mt19937_64 rng(seed);
  ClassicalOracle primary(Strategy::Primary), alternate(Strategy::Alternate);
  bool ok = true;
  int found = 0;
  while (found < count) {
    int d = static_cast<int>(rng() % static_cast<uint64_t>(dmax + 1));
    int n = 1 + static_cast<int>(rng() % static_cast<uint64_t>(3 * d + 3));
    std::vector<Insertion> ins;
    for (int i = 0; i < n; ++i)
      ins.push_back({static_cast<int>(rng() % 3), static_cast<int>(rng() % static_cast<uint64_t>(psimax + 1))});
    GWKey k = GWKey::make(d, ins);
    if (!k.dimension_ok() || (d == 0 && n < 3)) continue;
    ++found;
    Rational x = primary.value(k), y = alternate.value(k);
    if (x != y) {
      ok = false;
      if (failures) failures->push_back(to_string(k) + ": " + to_string(x) + " vs " + to_string(y));
    }
  }
  return ok;
}

}  // namespace p2trop
