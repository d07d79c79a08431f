#include "p2trop/invariants.hpp"

#include <sstream>

#include "p2trop/generality.hpp"

namespace p2trop {

int RVector::count() const {
  return static_cast<int>(std::count_if(r.begin(), r.end(), [](int v) { return v > 0; }));
}

int RVector::total() const {
  int s = 0;
  for (int v : r) s += v;
  return s;
}

int RVector::position(int i) const {
  int seen = 0;
  for (std::size_t j = 0; j < r.size(); ++j)
    if (r[j] > 0 && ++seen == i) return static_cast<int>(j) + 1;
  throw std::out_of_range("r has fewer nonzero entries");
}

int RVector::value(int i) const { return r[position(i) - 1]; }

bool RVector::leq(const RVector& o) const {
  if (r.size() != o.r.size()) return false;
  for (std::size_t j = 0; j < r.size(); ++j)
    if (r[j] > o.r[j]) return false;
  return true;
}

bool RVector::dominated_by(const RVector& o) const {
  if (!leq(o) || *this == o) return false;
  for (std::size_t j = 0; j < r.size(); ++j)
    if ((r[j] > 0) != (o.r[j] > 0)) return false;
  return true;
}

RVector parse_rvector(const std::string& text) {
  RVector out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    int v = std::stoi(tok, &used);
    if (v < 0) throw std::invalid_argument("negative entry in r");
    out.r.push_back(v);
  }
  return out;
}

std::string to_string(const RVector& r) {
  std::string s;
  for (std::size_t j = 0; j < r.r.size(); ++j) s += (j ? "," : "") + std::to_string(r.r[j]);
  return s;
}

GWKey DescendentKey::classical() const {
  std::vector<Insertion> ins;
  for (int v : r.r)
    if (v > 0) ins.push_back({2, v - 1});
  for (int j = 0; j < m; ++j) ins.push_back({0, 0});
  ins.push_back({2 - cls, nu});
  return GWKey::make(d, ins);
}

std::string to_string(const DescendentKey& k) {
  std::ostringstream os;
  os << "d=" << k.d << " r=(" << to_string(k.r) << ") m=" << k.m << " nu=" << k.nu << " cls=" << k.cls;
  return os.str();
}

nlohmann::json to_json(const TropResult& r) {
  nlohmann::json sec = nlohmann::json::object();
  for (const auto& [name, v] : r.sectors) sec[name] = to_string(v);
  return {{"d", r.key.d},          {"r", r.key.r.r},     {"m", r.key.m},
          {"nu", r.key.nu},        {"cls", r.key.cls},   {"value", to_string(r.value)},
          {"sectors", sec},        {"seed", r.seed}};
}

Rational mult_vertex(int level, int n0, int n1, int n2) {
  if (n0 < 0 || n1 < 0 || n2 < 0) throw std::invalid_argument("negative ray count");
  Rational denom = Rational(factorial(n0) * factorial(n1) * factorial(n2));
  switch (level) {
    case 0:
      return 1 / denom;
    case 1:
      return -(harmonic(n0) + harmonic(n1) + harmonic(n2)) / denom;
    case 2: {
      Rational h = harmonic(n0) + harmonic(n1) + harmonic(n2);
      Rational h2 = harmonic_squares(n0) + harmonic_squares(n1) + harmonic_squares(n2);
      return (h * h + h2) / (2 * denom);
    }
    default:
      throw std::invalid_argument("multiplicity level must be 0, 1 or 2");
  }
}

namespace {

std::string sector_name(char kind, int i) { return std::string(kind == 'r' ? "rho_" : "sigma_") + std::to_string(i); }

// sum over n with n_v = 0 for directions outside `allowed` of Mult^level(n) x^n hbar^{-|n|}
Series vertex_series(const RingConfig& cfg, int level, unsigned allowed, const Rational& scale = 1) {
  Series out(cfg);
  int cap[3];
  for (int v = 0; v < 3; ++v) cap[v] = (allowed >> v & 1) ? cfg.xcap : 0;
  for (int a = 0; a <= cap[0]; ++a)
    for (int b = 0; b <= cap[1]; ++b)
      for (int c = 0; c <= cap[2]; ++c) {
        Rational w = mult_vertex(level, a, b, c) * scale;
        if (sgn(w) == 0) continue;
        ExponentKey k = ExponentKey::xpow(a, b, c);
        k.hbar = static_cast<int16_t>(-(a + b + c));
        out.add_term(k, w);
      }
  return out;
}

}  // namespace

namespace {

ScatteringDiagram diagram_for(const Arrangement& a, const InvariantOptions& opt) {
  if (opt.dmax < 1 || opt.mbar < 0) throw ConfigError("invariant truncation out of range");
  DiagramOptions dopt;
  dopt.dmax = opt.dmax;
  dopt.max_order = opt.max_order;
  return build_diagram(a, dopt);
}

}  // namespace

TropicalEngine::TropicalEngine(const Arrangement& a, const InvariantOptions& opt)
    : TropicalEngine(diagram_for(a, opt), opt) {}

TropicalEngine::TropicalEngine(ScatteringDiagram d, const InvariantOptions& opt)
    : arr_(d.arrangement()), opt_(opt), diagram_(std::move(d)) {
  if (opt.dmax < 1 || opt.mbar < 0) throw ConfigError("invariant truncation out of range");
  if (diagram_.config().xcap != opt.dmax || diagram_.config().max_order != opt.max_order)
    throw ConfigError("diagram truncation does not match the invariant options");
  cfg_ = RingConfig{arr_.k(), opt.mbar, opt.dmax, opt.max_order};
  check_skeleton(diagram_);
  build();
}

TropicalEngine generate_engine(uint64_t seed, int k, const InvariantOptions& opt) {
  GeneratorOptions go;
  go.probe.dmax = opt.dmax;
  go.probe.max_order = opt.max_order;
  std::optional<TropicalEngine> engine;
  go.probe.extra = [&](const ScatteringDiagram& d) { engine.emplace(d, opt); };
  Arrangement a = generate_arrangement(seed, k, go);
  if (!engine || !(engine->diagram().arrangement().Q == a.Q)) engine.emplace(a, opt);
  return std::move(*engine);
}

Series& TropicalEngine::slot(int cls, const std::string& sector) {
  auto it = raw_.find({cls, sector});
  if (it == raw_.end()) it = raw_.emplace(std::make_pair(cls, sector), Series(cfg_)).first;
  return it->second;
}

void TropicalEngine::build() {
  add_at_Q();
  if (opt_.classes & 6u) add_on_skeleton();
  if (opt_.classes & 4u) {
    add_unmarked_singular();
    add_marked();
  }
  // T_{0,tr} markings at the x-vertex and at the marked points
  Series dress = exp_truncated(y0_var(cfg_), -1);
  for (const auto& [key, s] : raw_) final_[key] = mul(dress, that_operator(s));
  for (const auto& [key, s] : marked_) {
    auto it = final_.find(key);
    if (it == final_.end()) final_.emplace(key, s);
    else it->second += s;
  }
}

void TropicalEngine::add_at_Q() {
  Series e = with_config(exp_potential_triples(diagram_, arr_.Q), cfg_);
  for (int level = 0; level < 3; ++level)
    if (opt_.classes & (1u << level))
      slot(level, "Q") +=
          hbar_shift(mul(e, vertex_series(cfg_, level, 7u, level == 1 ? opt_.mult1_scale : Rational(1))), -level);
}

void TropicalEngine::add_on_skeleton() {
  BrokenLineOptions bo;
  bo.perturbation = opt_.perturbation;
  const auto& sups = diagram_.supports();
  for (int i = 0; i < 3; ++i) {
    Ray skeleton{arr_.Q, kFan[i], false};
    std::string name = sector_name('r', i);
    unsigned allowed = 7u & ~(1u << i);
    for (const auto& sup : sups) {
      auto x = intersect(skeleton, sup.ray);
      if (!x) continue;
      Series rigid(cfg_);
      for (int j : sup.walls) {
        const Wall& w = diagram_.walls()[j];
        ExponentKey k = w.mono;
        k.hbar = -1;
        rigid.add_term(k, Rational(std::abs(wedge(sup.ray.dir, kFan[i]))) * w.coeff);
      }
      if (rigid.is_zero()) continue;
      Series e = mul(rigid, with_config(exp_potential_triples(diagram_, *x, bo), cfg_));
      slot(1, name) += mul(e, vertex_series(cfg_, 0, allowed));
      slot(2, name) += hbar_shift(mul(e, vertex_series(cfg_, 1, allowed, opt_.mult1_scale)), -1);
    }
  }
}

void TropicalEngine::add_unmarked_singular() {
  BrokenLineOptions bo;
  bo.perturbation = opt_.perturbation;
  const auto& walls = diagram_.walls();
  for (const auto& sp : diagram_.singular_points()) {
    if (sp.marked) continue;
    Series rigid(cfg_);
    for (std::size_t a = 0; a < sp.through.size(); ++a)
      for (std::size_t b = a + 1; b < sp.through.size(); ++b) {
        const Wall& w1 = walls[sp.through[a]];
        const Wall& w2 = walls[sp.through[b]];
        if (w1.u_mask() & w2.u_mask()) continue;
        long det = std::abs(wedge(w1.support.dir, w2.support.dir));
        if (det == 0) continue;
        auto k = combine(w1.mono, w2.mono, cfg_);
        if (!k) continue;
        k->hbar = -2;
        rigid.add_term(*k, Rational(det) * w1.coeff * w2.coeff);
      }
    if (rigid.is_zero()) continue;
    int j = open_sector(sp.at - arr_.Q);
    if (j < 0) throw GeneralityError("singular point " + to_string(sp.at) + " on the skeleton");
    Series e = mul(rigid, with_config(exp_potential_triples(diagram_, sp.at, bo), cfg_));
    // pure rays in directions m_j and m_{j+1} would stay inside the sector
    slot(2, sector_name('s', j)) += mul(e, vertex_series(cfg_, 0, 1u << ((j + 2) % 3)));
  }
}

void TropicalEngine::add_marked() {
  const int top = cfg_.top_order();
  for (int l = 1; l <= arr_.k(); ++l) {
    const Point& P = arr_.P[l - 1];
    int j = open_sector(P - arr_.Q);
    if (j < 0) throw GeneralityError("marked point " + to_string(P) + " on the skeleton");
    BrokenLineOptions bo;
    bo.exclude_based_at = l;
    bo.forbidden_mask = 1u << (l - 1);
    Series disks = that_operator(with_config(exp_potential_triples(diagram_, P, bo), cfg_));
    auto it = marked_.find({2, sector_name('s', j)});
    if (it == marked_.end()) it = marked_.emplace(std::make_pair(2, sector_name('s', j)), Series(cfg_)).first;
    Series& out = it->second;
    for (const auto& [key, c] : disks.terms()) {
      const int s = -key.hbar;
      int lo = std::max({1, int(key.x[0]), int(key.x[1]), int(key.x[2])});
      for (int d = lo; d <= opt_.dmax; ++d) {
        int p[3];
        int R = s;
        Rational w = c;
        for (int v = 0; v < 3; ++v) {
          p[v] = d - key.x[v];
          R += p[v];
          w /= Rational(factorial(p[v]));
        }
        const int inside = p[j] + p[(j + 1) % 3];
        for (int g = 0; g + key.y0 <= cfg_.mbar; ++g) {
          Rational wg = w / Rational(factorial(g));
          for (int nu = 0; R + g - 1 - nu >= 0; ++nu) {
            int a = R + g - 1 - nu;
            if (a > top) continue;
            int n = R + g - 1 - inside;
            if (n < nu) continue;
            ExponentKey k = key;
            k.x = {uint8_t(d), uint8_t(d), uint8_t(d)};
            k.u[l - 1] = static_cast<int8_t>(a);
            k.y0 = static_cast<uint8_t>(key.y0 + g);
            k.hbar = static_cast<int16_t>(-(nu + 2));
            out.add_term(k, wg * Rational(binomial(n, nu)));
          }
        }
      }
    }
  }
}

const Series& TropicalEngine::series(int cls, const std::string& sector) const {
  static const Series empty;
  auto it = final_.find({cls, sector});
  return it == final_.end() ? empty : it->second;
}

std::vector<std::string> TropicalEngine::sectors(int cls) const {
  std::vector<std::string> out;
  for (const auto& [key, s] : final_)
    if (key.first == cls) out.push_back(key.second);
  return out;
}

TropResult TropicalEngine::value(const DescendentKey& key) const {
  if (key.cls < 0 || key.cls > 2) throw std::invalid_argument("class index must be 0, 1 or 2");
  if (static_cast<int>(key.r.r.size()) > arr_.k()) throw std::invalid_argument("r has more entries than marked points");
  if (key.d < 0 || key.m < 0 || key.nu < 0) throw std::invalid_argument("negative key entry");
  if (!(opt_.classes & (1u << key.cls))) throw PreconditionError("class not assembled by this engine");
  TropResult res;
  res.key = key;
  res.seed = arr_.seed;
  res.value = 0;
  if (!key.compatible()) return res;
  if (key.d > opt_.dmax || key.m > opt_.mbar) throw PreconditionError("key beyond the computed truncation");
  ExponentKey k = ExponentKey::xpow(key.d, key.d, key.d);
  for (std::size_t j = 0; j < key.r.r.size(); ++j) {
    if (key.r.r[j] == 0) continue;
    if (key.r.r[j] - 1 > cfg_.top_order()) throw PreconditionError("psi-order beyond the computed truncation");
    k.u[j] = static_cast<int8_t>(key.r.r[j] - 1);
  }
  k.y0 = static_cast<uint8_t>(key.m);
  k.hbar = static_cast<int16_t>(-(key.nu + 2));
  Rational mf = Rational(factorial(key.m));
  for (const auto& [sk, s] : final_) {
    if (sk.first != key.cls) continue;
    Rational v = s.coefficient(k) * mf;
    if (sgn(v) == 0) continue;
    res.sectors[sk.second] = v;
    res.value += v;
  }
  return res;
}

TropResult tropical_invariant(const Arrangement& a, const DescendentKey& key, const InvariantOptions& opt) {
  InvariantOptions o = opt;
  o.dmax = std::max(o.dmax, key.d);
  o.mbar = std::max(o.mbar, key.m);
  TropicalEngine e(a, o);
  return e.value(key);
}

bool check_tropfun(const TropicalEngine& e, const DescendentKey& key) {
  if (key.m < 1) throw std::invalid_argument("the fundamental class identity needs m >= 1");
  Rational lhs = e.value(key).value;
  Rational rhs = 0;
  DescendentKey k = key;
  k.m -= 1;
  for (std::size_t j = 0; j < key.r.r.size(); ++j) {
    if (key.r.r[j] < 2) continue;  // psi^{-1}
    DescendentKey kj = k;
    kj.r.r[j] -= 1;
    rhs += e.value(kj).value;
  }
  if (key.nu >= 1) {
    DescendentKey kn = k;
    kn.nu -= 1;
    rhs += e.value(kn).value;
  }
  return lhs == rhs;
}

std::vector<DescendentKey> compatible_keys(int k, const InvariantOptions& opt) {
  int top = RingConfig{k, opt.mbar, opt.dmax, opt.max_order}.top_order();
  std::vector<DescendentKey> out;
  std::vector<int> r(static_cast<std::size_t>(k), 0);
  while (true) {
    for (int d = 1; d <= opt.dmax; ++d)
      for (int m = 0; m <= opt.mbar; ++m)
        for (int cls = 0; cls < 3; ++cls) {
          DescendentKey key{d, RVector{r}, m, 0, cls};
          key.nu = 3 * d + m - key.r.total() + cls - 2;
          if (key.nu >= 0) out.push_back(key);
        }
    std::size_t j = 0;
    while (j < r.size() && r[j] == top + 1) r[j++] = 0;
    if (j == r.size()) break;
    ++r[j];
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TropResult> invariant_table(const TropicalEngine& e) {
  std::vector<TropResult> out;
  for (const auto& key : compatible_keys(e.diagram().arrangement().k(), e.options())) out.push_back(e.value(key));
  return out;
}

namespace {

int factor_count(const UKey& u) {
  int c = u[2] + u[3];
  for (std::size_t i = 4; i < u.size(); ++i) c += u[i] > 0;
  return c;
}

void add_u(UPoly& p, const UKey& u, const Rational& c) {
  if (c == 0) return;
  auto& slot = p[u];
  slot += c;
  if (slot == 0) p.erase(u);
}

// Multiplies by (y_{1,0} / hbar)^s / s!.
UPoly lift(const UPoly& p, int s, int wmax) {
  UPoly out;
  for (const auto& [u, c] : p) {
    UKey n = u;
    n[1] += s;
    n[3] += s;
    if (factor_count(n) <= wmax) add_u(out, n, c / Rational(factorial(s)));
  }
  return out;
}

}  // namespace

UPoly generating_L(const TropicalEngine& e, int j, int wmax) {
  if (j < 0 || j > 2) throw std::invalid_argument("generating_L: j must be 0, 1 or 2");
  const int k = e.diagram().arrangement().k();
  const int top = e.ring().top_order();
  UPoly out;
  UKey u(4 + k, 0);
  if (j == 0) {
    // e^{y_{0,0} / hbar}
    for (int c = 0; c <= wmax; ++c) {
      u[1] = u[2] = c;
      add_u(out, u, 1 / Rational(factorial(c)));
    }
  } else if (j == 2) {
    // hbar^{-1} e^{y_{0,0} / hbar} sum_l y_{0,0}^l / l! y_{2,l}
    for (int c = 0; c + 1 <= wmax; ++c)
      for (int l = 0; l <= top && c + l + 1 <= wmax; ++l)
        for (int i = 0; i < k; ++i) {
          UKey v(4 + k, 0);
          v[1] = 1 + c;
          v[2] = c + l;
          v[4 + i] = l + 1;
          add_u(out, v, 1 / Rational(factorial(c) * factorial(l)));
        }
  }
  for (const auto& key : compatible_keys(k, e.options())) {
    if (key.cls != j || key.m < 1) continue;
    if (key.m - 1 + key.r.count() > wmax) continue;
    const Rational v = e.value(key).value;
    UKey w(4 + k, 0);
    w[0] = key.d;
    w[1] = key.nu + 1;
    w[2] = key.m - 1;
    for (int i = 0; i < k; ++i) w[4 + i] = key.r.r[i];
    add_u(out, w, v / Rational(factorial(key.m - 1)));
  }
  return out;
}

std::array<UPoly, 3> t_trop(const TropicalEngine& e, int wmax) {
  const std::array<UPoly, 3> L = {generating_L(e, 0, wmax), generating_L(e, 1, wmax), generating_L(e, 2, wmax)};
  std::array<UPoly, 3> phi;
  for (int i = 0; i < 3; ++i)
    for (int s = 0; s <= i; ++s)
      for (const auto& [u, c] : lift(L[i - s], s, wmax)) add_u(phi[i], u, c);
  return phi;
}

UPoly expand_degree_marker(const UPoly& p, int wmax) {
  UPoly out;
  for (const auto& [u, c] : p) {
    Rational scale = c;  // c d^e / e!
    for (int e = 0; factor_count(u) + e <= wmax; ++e) {
      UKey n(u.begin() + 1, u.end());
      n[2] += e;
      add_u(out, n, scale);
      scale = scale * u[0] / (e + 1);
    }
  }
  return out;
}

}  // namespace p2trop
