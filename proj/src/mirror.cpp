#include "p2trop/mirror.hpp"

#include <functional>

#include "p2trop/oracle.hpp"

namespace p2trop {

namespace {

// All y-exponents with at most wmax factors, nu = 0.
std::vector<YKey> y_exponents(int psi, int wmax) {
  std::vector<YKey> out;
  YKey k = ykey(psi);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
    if (pos == k.size()) {
      out.push_back(k);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      k[pos] = e;
      rec(pos + 1, left - e);
    }
    k[pos] = 0;
  };
  rec(kY00, wmax);
  return out;
}

Rational y_factorials(const YKey& k) {
  Rational f = 1;
  for (std::size_t i = kY00; i < k.size(); ++i) f *= Rational(factorial(k[i]));
  return f;
}

// T_0^{1+j}, T_1^l, (psi^m T_2)^{a_m} for the exponent k.
std::vector<Insertion> gamma_insertions(const YKey& k) {
  std::vector<Insertion> ins(1 + k[kY00], Insertion{0, 0});
  ins.insert(ins.end(), k[kY10], Insertion{1, 0});
  for (std::size_t m = kY20; m < k.size(); ++m)
    ins.insert(ins.end(), k[m], Insertion{2, static_cast<int>(m - kY20)});
  return ins;
}

// Sum of b + a over gamma insertions.
int gamma_dimension(const YKey& k) {
  int s = k[kY10];
  for (std::size_t m = kY20; m < k.size(); ++m) s += k[m] * (2 + static_cast<int>(m - kY20));
  return s;
}

CohomologySeries descendent_series(const YTruncation& t) {
  CohomologySeries out;
  add_term(out[0], ykey(t.psi), 1);
  const auto exps = y_exponents(t.psi, t.wmax);
  for (int i = 0; i < 3; ++i) {
    for (const auto& e : exps) {
      const int n = 2 + ycount(e);
      const Rational inv_fact = 1 / y_factorials(e);
      for (int d = 0; d <= t.dmax; ++d) {
        const int a = 3 * d + n - 1 - (2 - i) - gamma_dimension(e);
        if (a < 0) continue;
        auto ins = gamma_insertions(e);
        ins.push_back({2 - i, a});
        Rational v = classical_invariant(GWKey::make(d, ins));
        if (v == 0) continue;
        YKey k = e;
        k[kNu] = a + 1;
        add_term(out[i], k, v * inv_fact);
      }
    }
  }
  return out;
}

YPoly shift_hbar(const YPoly& p, int nu) {
  YPoly out;
  for (const auto& [k, c] : p) {
    YKey n = k;
    n[kNu] += nu;
    out.emplace(std::move(n), c);
  }
  return out;
}

}  // namespace

CohomologySeries j_function(const YTruncation& t) {
  const int psi = 1;
  CohomologySeries x;
  add_term(x[0], ykey(psi), 1);
  YKey y2 = ykey(psi);
  y2[kNu] = 1;
  y2[kY20] = 1;
  add_term(x[2], y2, 1);
  for (int i = 0; i < 3; ++i) {
    for (int d = 1; d <= t.dmax; ++d) {
      for (int nu = 0; nu <= 3 * d + i - 2; ++nu) {
        const int n = 3 * d + i - 2 - nu;
        if (n > t.wmax) continue;
        std::vector<Insertion> ins(n, Insertion{2, 0});
        ins.push_back({2 - i, nu});
        const Rational v = classical_invariant(GWKey::make(d, ins));
        if (v == 0) continue;
        Rational dl = 1;  // d^l / l!
        for (int l = 0; n + l <= t.wmax; ++l) {
          YKey k = ykey(psi);
          k[kNu] = nu + 2;
          k[kY10] = l;
          k[kY20] = n;
          add_term(x[i], k, v * dl / Rational(factorial(n)));
          dl = dl * d / (l + 1);
        }
      }
    }
  }
  // e^{y~_0 / hbar} and e^{T_1 y~_1 / hbar}.
  YPoly e0;
  for (int c = 0; c <= t.wmax; ++c) {
    YKey k = ykey(psi);
    k[kNu] = c;
    k[kY00] = c;
    add_term(e0, k, 1 / Rational(factorial(c)));
  }
  const YTruncation tj{t.dmax, t.wmax, psi};
  CohomologySeries out;
  for (int i = 0; i < 3; ++i) {
    for (int s = 0; s <= i; ++s) {
      YPoly lift;
      YKey k = ykey(psi);
      k[kNu] = s;
      k[kY10] = s;
      add_term(lift, k, 1 / Rational(factorial(s)));
      add_into(out[i], ymul(ymul(lift, e0, tj), x[i - s], tj));
    }
    out[i] = ytruncate(out[i], i, tj);
  }
  return out;
}

CohomologySeries j_function_axiom(const YTruncation& t) {
  YTruncation tj = t;
  tj.psi = 1;
  return descendent_series(tj);
}

YPoly mirror_K(int i, const YTruncation& t) {
  YPoly out;
  for (const auto& e : y_exponents(t.psi, t.wmax)) {
    const int w = ycount(e);
    const int rhs = i + gamma_dimension(e) - (w + 1);  // 3d
    if (rhs < 0 || rhs % 3 != 0 || rhs / 3 > t.dmax) continue;
    auto ins = gamma_insertions(e);
    ins.push_back({i, 0});
    const Rational v = classical_invariant(GWKey::make(rhs / 3, ins));
    add_term(out, e, v / y_factorials(e));
  }
  return out;
}

YPoly degree_part(const YPoly& K, int i, int d) {
  YPoly out;
  for (const auto& [k, c] : K)
    if (weight3(k, 1 - i) == 3 * d) out.emplace(k, c);
  return out;
}

CohomologySeries big_T(const YTruncation& t) { return descendent_series(t); }

CohomologySeries big_J(const YTruncation& t) {
  const CohomologySeries J = j_function(t);
  // y~_0 -> K_2, y~_1 -> K_1, y~_2 -> K_0.
  const std::array<YPoly, 3> sub = {mirror_K(2, t), mirror_K(1, t), mirror_K(0, t)};
  std::array<std::vector<YPoly>, 3> powers;
  for (int v = 0; v < 3; ++v) {
    YPoly one;
    add_term(one, ykey(t.psi), 1);
    powers[v].push_back(one);
    for (int e = 1; e <= t.wmax; ++e) powers[v].push_back(ymul(powers[v].back(), sub[v], t));
  }
  CohomologySeries out;
  for (int i = 0; i < 3; ++i) {
    for (const auto& [k, c] : J[i]) {
      YPoly term = ymul(ymul(powers[0][k[kY00]], powers[1][k[kY10]], t), powers[2][k[kY20]], t);
      add_into(out[i], shift_hbar(term, k[kNu]), c);
    }
    out[i] = ytruncate(out[i], i, t);
  }
  return out;
}

Rational grading(const YKey& k, int cls) { return fraction(gr3(k, cls), 3); }

bool grading_check(const CohomologySeries& s, std::vector<std::string>* failures) {
  bool ok = true;
  for (int i = 0; i < 3; ++i) {
    for (const auto& [k, c] : s[i]) {
      const int g = gr3(k, i);
      if (g >= 0 && g % 3 == 0) continue;
      ok = false;
      if (failures) failures->push_back("T" + std::to_string(i) + " " + to_string(k) + " gr=" + to_string(grading(k, i)));
    }
  }
  return ok;
}

bool series_equal(const YPoly& a, const YPoly& b, int cls, std::vector<std::string>* failures) {
  bool ok = true;
  auto report = [&](const YKey& k, const Rational& x, const Rational& y) {
    ok = false;
    if (failures)
      failures->push_back("T" + std::to_string(cls) + " " + to_string(k) + ": " + to_string(x) + " vs " + to_string(y));
  };
  for (const auto& [k, c] : a) {
    auto it = b.find(k);
    const Rational other = it == b.end() ? Rational(0) : it->second;
    if (c != other) report(k, c, other);
  }
  for (const auto& [k, c] : b)
    if (!a.contains(k)) report(k, 0, c);
  return ok;
}

bool series_equal(const CohomologySeries& a, const CohomologySeries& b, std::vector<std::string>* failures) {
  bool ok = true;
  for (int i = 0; i < 3; ++i) ok = series_equal(a[i], b[i], i, failures) && ok;
  return ok;
}

bool euler_identity_holds(const CohomologySeries& s, const std::array<YPoly, 3>& K, const YTruncation& t,
                          std::vector<std::string>* failures) {
  constexpr int vars[3] = {kY00, kY10, kY20};
  bool ok = true;
  for (int i = 0; i < 3; ++i) {
    YPoly lhs;
    for (int j = 0; j < 3; ++j) add_into(lhs, ymul(yderiv(s[i], vars[j]), K[2 - j], t));
    ok = series_equal(ytruncate(lhs, i, t), ytruncate(yeuler(s[i]), i, t), i, failures) && ok;
  }
  return ok;
}

bool euler_identity_check(const YTruncation& t, std::vector<std::string>* failures) {
  const std::array<YPoly, 3> K = {mirror_K(0, t), mirror_K(1, t), mirror_K(2, t)};
  const bool a = euler_identity_holds(big_T(t), K, t, failures);
  const bool b = euler_identity_holds(big_J(t), K, t, failures);
  return a && b;
}

bool PointWindow::contains(const UKey& u, int cls) const {
  int used = 0, total = 0;
  for (std::size_t i = 3; i < u.size(); ++i) {
    if (u[i] > order) return false;
    used += u[i] > 0;
    total += u[i];
  }
  const int w3 = u[0] - u[1] - cls + total;
  if (w3 > 3 * dmax) return false;
  if (u[1] + u[2] + used > wmax) return false;
  if (w3 > 0 && u[1] + 1 > mbar) return false;
  return true;
}

bool point_ring_equal(const UPoly& trop, const YPoly& cl, int cls, const PointWindow& w,
                      std::vector<std::string>* failures) {
  const UPoly image = to_point_ring(cl, w.k);
  bool ok = true;
  auto check = [&](const UKey& u) {
    if (!w.contains(u, cls)) return;
    auto a = trop.find(u);
    auto b = image.find(u);
    const Rational x = a == trop.end() ? Rational(0) : a->second;
    const Rational y = b == image.end() ? Rational(0) : b->second;
    if (x == y) return;
    ok = false;
    if (failures)
      failures->push_back("T" + std::to_string(cls) + " " + to_string_u(u) + ": " + to_string(x) + " vs " + to_string(y));
  };
  for (const auto& [u, c] : trop) check(u);
  for (const auto& [u, c] : image)
    if (!trop.contains(u)) check(u);
  return ok;
}

}  // namespace p2trop
