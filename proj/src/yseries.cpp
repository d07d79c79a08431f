#include "p2trop/yseries.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>

namespace p2trop {

YKey ykey(int psi) { return YKey(3 + psi, 0); }

int ycount(const YKey& k) { return std::accumulate(k.begin() + 1, k.end(), 0); }

int weight3(const YKey& k, int cls) {
  int w = k[kNu] - k[kY00] - cls;
  for (std::size_t m = kY20; m < k.size(); ++m) w += k[m] * static_cast<int>(m - kY20 + 1);
  return w;
}

int gr3(const YKey& k, int cls) {
  int g = weight3(k, cls);
  for (std::size_t m = kY20 + 1; m < k.size(); ++m) g += 3 * k[m];
  return g;
}

void add_term(YPoly& p, const YKey& k, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = p.try_emplace(k, c);
  if (fresh) return;
  it->second += c;
  if (it->second == 0) p.erase(it);
}

void add_into(YPoly& p, const YPoly& q, const Rational& scale) {
  for (const auto& [k, c] : q) add_term(p, k, c * scale);
}

YPoly ymul(const YPoly& a, const YPoly& b, const YTruncation& t) {
  YPoly out;
  for (const auto& [ka, ca] : a) {
    const int wa = ycount(ka);
    if (wa > t.wmax) continue;
    for (const auto& [kb, cb] : b) {
      if (wa + ycount(kb) > t.wmax) continue;
      YKey k = ka;
      for (std::size_t i = 0; i < k.size(); ++i) k[i] += kb[i];
      add_term(out, k, ca * cb);
    }
  }
  return out;
}

YPoly yderiv(const YPoly& p, int var) {
  if (var < kY00) throw std::invalid_argument("yderiv: not a y variable");
  YPoly out;
  for (const auto& [k, c] : p) {
    if (k[var] == 0) continue;
    YKey n = k;
    n[var] -= 1;
    add_term(out, n, c * k[var]);
  }
  return out;
}

YPoly yeuler(const YPoly& p) {
  YPoly out;
  for (const auto& [k, c] : p) add_term(out, k, c * ycount(k));
  return out;
}

YPoly yeuler_positive(const YPoly& p) {
  YPoly out;
  for (const auto& [k, c] : p) {
    int s = 0;
    for (std::size_t m = kY20 + 1; m < k.size(); ++m) s += k[m];
    add_term(out, k, c * s);
  }
  return out;
}

YPoly ytruncate(const YPoly& p, int cls, const YTruncation& t) {
  YPoly out;
  for (const auto& [k, c] : p)
    if (ycount(k) <= t.wmax && weight3(k, cls) <= 3 * t.dmax) out.emplace(k, c);
  return out;
}

std::string to_string(const YKey& k) {
  std::string s = "hbar^-" + std::to_string(k[kNu]);
  if (k[kY00]) s += " y00^" + std::to_string(k[kY00]);
  if (k[kY10]) s += " y10^" + std::to_string(k[kY10]);
  for (std::size_t m = kY20; m < k.size(); ++m)
    if (k[m]) s += " y2" + std::to_string(m - kY20) + "^" + std::to_string(k[m]);
  return s;
}

UPoly to_point_ring(const YPoly& p, int k) {
  UPoly out;
  for (const auto& [key, c] : p) {
    const int psi = static_cast<int>(key.size()) - 3;
    // prod_m y_{2,m}^{a_m} = prod_m a_m! * sum over point assignments.
    Rational scale = c;
    int used = 0;
    for (int m = 0; m < psi; ++m) {
      scale *= Rational(factorial(key[kY20 + m]));
      used += key[kY20 + m];
    }
    if (used > k) continue;
    std::vector<int> left(key.begin() + kY20, key.end());
    UKey u(3 + k, 0);
    u[0] = key[kNu];
    u[1] = key[kY00];
    u[2] = key[kY10];
    std::function<void(int, int)> place = [&](int i, int remaining) {
      if (remaining == 0) {
        out[u] += scale;
        return;
      }
      if (k - i < remaining) return;
      place(i + 1, remaining);
      for (int m = 0; m < psi; ++m) {
        if (left[m] == 0) continue;
        --left[m];
        u[3 + i] = m + 1;
        place(i + 1, remaining - 1);
        u[3 + i] = 0;
        ++left[m];
      }
    };
    place(0, used);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::string to_string_u(const UKey& k) {
  std::string s = "hbar^-" + std::to_string(k[0]);
  if (k[1]) s += " y00^" + std::to_string(k[1]);
  if (k[2]) s += " y10^" + std::to_string(k[2]);
  std::string r;
  for (std::size_t i = 3; i < k.size(); ++i) r += (i > 3 ? "," : "") + std::to_string(k[i]);
  return s + " u[" + r + "]";
}

}  // namespace p2trop
