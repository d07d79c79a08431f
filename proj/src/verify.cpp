#include "p2trop/verify.hpp"

#include <chrono>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "p2trop/generality.hpp"
#include "p2trop/identities.hpp"
#include "p2trop/invariants.hpp"
#include "p2trop/mirror.hpp"
#include "p2trop/oracle.hpp"

namespace p2trop {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects failures and keeps the first few for the report.
class Notes {
 public:
  void fail(const std::string& s) {
    ++failures_;
    if (shown_.size() < 8) shown_.push_back(s);
  }
  void fail_all(const std::vector<std::string>& v, const std::string& prefix) {
    for (const auto& s : v) fail(prefix + s);
  }
  void info(const std::string& s) { info_.push_back(s); }
  bool ok() const { return failures_ == 0; }
  std::string text() const {
    std::string out;
    for (const auto& s : info_) out += (out.empty() ? "" : "; ") + s;
    if (failures_) {
      out += (out.empty() ? "" : "; ") + std::to_string(failures_) + " failure(s)";
      for (const auto& s : shown_) out += "; " + s;
    }
    return out;
  }

 private:
  int failures_ = 0;
  std::vector<std::string> shown_;
  std::vector<std::string> info_;
};

template <class F>
CheckResult timed(const std::string& name, F&& body) {
  CheckResult r;
  r.name = name;
  const auto t0 = Clock::now();
  Notes notes;
  try {
    body(notes);
    r.pass = notes.ok();
  } catch (const std::exception& e) {
    notes.fail(std::string("exception: ") + e.what());
    r.pass = false;
  }
  r.seconds = seconds_since(t0);
  r.detail = notes.text();
  return r;
}

InvariantOptions engine_options(const RunConfig& c, int dmax) {
  InvariantOptions io;
  io.dmax = dmax;
  io.mbar = c.mbar;
  if (c.mutate_mult) io.mult1_scale = 2;
  return io;
}

// Engines are expensive; checks 2, 5, 6 and 9 share them.
const TropicalEngine& cached_engine(uint64_t seed, int k, const InvariantOptions& io) {
  using Key = std::tuple<uint64_t, int, int, int, int, std::string, unsigned>;
  static std::map<Key, std::unique_ptr<TropicalEngine>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  Key key{seed, k, io.dmax, io.mbar, io.max_order, to_string(io.mult1_scale), io.classes};
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<TropicalEngine>(generate_engine(seed, k, io))).first;
  return *it->second;
}

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.precision(3);
  o << s << "s";
  return o.str();
}

RVector primary_r(int k) {
  RVector r;
  r.r.assign(k, 1);
  r.r.back() = 0;
  return r;
}

}  // namespace

bool VerificationReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return !checks.empty();
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json cs = nlohmann::json::array();
  for (const auto& c : checks)
    cs.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}, {"seconds", c.seconds}});
  return {{"tier", tier}, {"seeds", seeds}, {"pass", pass()}, {"checks", cs}};
}

std::string VerificationReport::to_text() const {
  std::string out = "tier " + tier + ", seeds";
  for (auto s : seeds) out += " " + std::to_string(s);
  out += "\n";
  for (const auto& c : checks)
    out += std::string(c.pass ? "PASS " : "FAIL ") + c.name + " (" + fmt_seconds(c.seconds) + ") " + c.detail + "\n";
  out += pass() ? "overall PASS\n" : "overall FAIL\n";
  return out;
}

RunConfig tier_config(const std::string& tier) {
  RunConfig c;
  c.tier = tier;
  if (tier == "quick") {
    c.kmax = 2;
    c.dmax = 1;
    c.count_dmax = 1;
  } else if (tier == "standard") {
    c.kmax = 4;
    c.dmax = 2;
    c.count_dmax = 2;
  } else if (tier == "extended") {
    c.kmax = 4;
    c.dmax = 2;
    c.count_dmax = 3;
  } else {
    throw std::invalid_argument("unknown tier '" + tier + "'");
  }
  return c;
}

CheckResult check_primary_counts(const RunConfig& c) {
  return timed("primary-counts", [&](Notes& n) {
    static const Rational expected[] = {0, 1, 1, 12};
    static const double limit[] = {0, 1, 60, 0};
    for (int d = 1; d <= c.count_dmax && d <= 3; ++d) {
      const int k = 3 * d - 1;
      InvariantOptions io = engine_options(c, d);
      io.mbar = 0;
      io.max_order = 0;
      io.classes = 1u;
      const auto t0 = Clock::now();
      const TropicalEngine e = generate_engine(c.seed, k, io);
      const Rational v = e.value(DescendentKey{d, primary_r(k), 0, 0, 0}).value;
      const double s = seconds_since(t0);
      const Rational oracle = Rational(kontsevich(d));
      n.info("N" + std::to_string(d) + "=" + to_string(v) + " in " + fmt_seconds(s));
      if (v != oracle || v != expected[d])
        n.fail("N" + std::to_string(d) + ": tropical " + to_string(v) + ", oracle " + to_string(oracle));
      const double budget = d == 3 ? c.time_budget : limit[d];
      if (s > budget) n.fail("N" + std::to_string(d) + " took " + fmt_seconds(s) + " > " + fmt_seconds(budget));
    }
    const auto t0 = Clock::now();
    const Integer n4 = kontsevich(4);
    const double s = seconds_since(t0);
    n.info("N4=" + n4.get_str() + " in " + fmt_seconds(s));
    if (n4 != 620) n.fail("N4 = " + n4.get_str());
    if (s > 1) n.fail("N4 took " + fmt_seconds(s));
  });
}

CheckResult check_independence(const RunConfig& c) {
  return timed("arrangement-independence", [&](Notes& n) {
    const InvariantOptions io = engine_options(c, c.dmax);
    std::size_t keys = 0;
    for (int k = 1; k <= c.kmax; ++k) {
      const auto base = invariant_table(cached_engine(c.seed, k, io));
      keys += base.size();
      for (uint64_t s = c.seed + 1; s < c.seed + 3; ++s) {
        const auto other = invariant_table(cached_engine(s, k, io));
        if (other.size() != base.size()) {
          n.fail("k=" + std::to_string(k) + ": table sizes differ");
          continue;
        }
        for (std::size_t i = 0; i < base.size(); ++i)
          if (base[i].key != other[i].key || base[i].value != other[i].value)
            n.fail(to_string(base[i].key) + ": seed " + std::to_string(c.seed) + " gives " + to_string(base[i].value) +
                   ", seed " + std::to_string(s) + " gives " + to_string(other[i].value));
      }
    }
    n.info(std::to_string(keys) + " keys x 3 seeds");
  });
}

CheckResult check_scattering(const RunConfig& c) {
  return timed("scattering-consistency", [&](Notes& n) {
    // at D_max = 1 a child wall's action is truncated away entirely
    const int dmax = 2;
    int loops = 0;
    bool fault_seen = false;
    for (int k = 1; k <= std::min(c.kmax, 3); ++k) {
      GeneratorOptions go;
      go.retries = c.retries;
      go.probe.dmax = dmax;
      const Arrangement a = generate_arrangement(c.seed, k, go);
      DiagramOptions dopt;
      dopt.dmax = dmax;
      const ScatteringDiagram d = build_diagram(a, dopt);
      for (const auto& sp : d.singular_points()) {
        if (sp.marked) continue;
        ++loops;
        if (!check_loop_identity(d, sp.at)) n.fail("k=" + std::to_string(k) + ": loop at " + to_string(sp.at));
      }
      // fault injection: drop the first child wall, its Init loop must break
      for (int w = 0; w < static_cast<int>(d.walls().size()) && !fault_seen; ++w) {
        if (d.walls()[w].parent1 < 0) continue;
        const ScatteringDiagram broken = d.without_wall(w);
        if (check_loop_identity(broken, d.walls()[w].support.base))
          n.fail("k=" + std::to_string(k) + ": deleting child wall " + std::to_string(w) + " went unnoticed");
        fault_seen = true;
      }
    }
    n.info(std::to_string(loops) + " loops");
    if (c.kmax >= 2 && !fault_seen) n.fail("no child wall available for fault injection");
    if (fault_seen) n.info("fault injection detected");
  });
}

CheckResult check_potential(const RunConfig& c) {
  return timed("potential-structure", [&](Notes& n) {
    const int dmax = std::max(c.dmax, 1);
    GeneratorOptions go;
    go.retries = c.retries;
    go.probe.dmax = dmax;
    {
      const Arrangement a = generate_arrangement(c.seed, 0, go);
      DiagramOptions dopt;
      dopt.dmax = dmax;
      const ScatteringDiagram d = build_diagram(a, dopt);
      const auto lines = enumerate_broken_lines(d, a.Q);
      if (lines.size() != 3) n.fail("k=0: " + std::to_string(lines.size()) + " broken lines");
      if (!(potential_W_k0(d) == w_basic(d.config()))) n.fail("k=0: W = " + to_string(potential_W_k0(d)));
    }
    for (int k = 1; k <= std::min(c.kmax, 3); ++k) {
      const Arrangement a = generate_arrangement(c.seed, k, go);
      DiagramOptions dopt;
      dopt.dmax = dmax;
      const ScatteringDiagram d = build_diagram(a, dopt);
      const Series w = potential_W_k0(d);
      if (!(u_free_part(w) == w_basic(d.config())))
        n.fail("k=" + std::to_string(k) + ": W at u=0 is " + to_string(u_free_part(w)));
      for (int mbar = 0; mbar <= std::min(c.mbar, 2); ++mbar) {
        RingConfig cfg = d.config();
        cfg.mbar = mbar;
        const Series lhs = exp_truncated(potential_W_kmbar(d, mbar), -1);
        const Series rhs = that_operator(exp_truncated(y0_var(cfg) + with_config(w, cfg), -1));
        if (!(lhs == rhs)) n.fail("k=" + std::to_string(k) + " mbar=" + std::to_string(mbar) + ": exp identity");
      }
    }
  });
}

CheckResult check_fundamental_class(const RunConfig& c) {
  return timed("fundamental-class", [&](Notes& n) {
    const InvariantOptions io = engine_options(c, c.dmax);
    int count = 0;
    for (int k = 1; k <= c.kmax; ++k) {
      const TropicalEngine& e = cached_engine(c.seed, k, io);
      for (const auto& key : compatible_keys(k, io)) {
        if (key.m < 1) continue;
        ++count;
        if (!check_tropfun(e, key)) n.fail(to_string(key));
      }
    }
    n.info(std::to_string(count) + " keys with m >= 1");
  });
}

CheckResult check_oracle_equality(const RunConfig& c) {
  return timed("oracle-equality", [&](Notes& n) {
    const InvariantOptions io = engine_options(c, c.dmax);
    std::size_t count = 0, nonzero = 0;
    int max_r = 0, max_nu = 0;
    for (int k = 1; k <= c.kmax; ++k) {
      for (const auto& r : invariant_table(cached_engine(c.seed, k, io))) {
        ++count;
        const Rational cl = classical_invariant(r.key.classical());
        if (cl != 0) {
          ++nonzero;
          for (int x : r.key.r.r) max_r = std::max(max_r, x);
          max_nu = std::max(max_nu, r.key.nu);
        }
        if (cl != r.value) n.fail(to_string(r.key) + ": tropical " + to_string(r.value) + ", classical " + to_string(cl));
      }
    }
    n.info(std::to_string(count) + " keys (" + std::to_string(nonzero) + " nonzero, r_i up to " +
           std::to_string(max_r) + ", nu up to " + std::to_string(max_nu) + ")");
    // <psi T_2>_1 = 1 and <psi^4 T_2>_2 = 1/8 on both sides
    struct Spot {
      int d, nu;
      Rational expected;
    };
    for (const Spot& s : {Spot{1, 1, 1}, Spot{2, 4, fraction(1, 8)}}) {
      if (s.d > std::max(c.dmax, 1)) continue;
      const Rational cl = classical_invariant(GWKey::make(s.d, {{2, s.nu}}));
      const Rational tr = cached_engine(c.seed, 0, engine_options(c, c.dmax)).value({s.d, RVector{}, 0, s.nu, 0}).value;
      const std::string name = "<psi^" + std::to_string(s.nu) + " T2>_" + std::to_string(s.d);
      n.info(name + " = " + to_string(tr));
      if (cl != s.expected || tr != s.expected)
        n.fail(name + ": classical " + to_string(cl) + ", tropical " + to_string(tr));
    }
  });
}

CheckResult check_oracle_consistency(const RunConfig& c) {
  return timed("oracle-consistency", [&](Notes& n) {
    std::vector<std::string> f;
    if (!reduction_order_check(c.seed, 200, 3, 4, &f)) n.fail_all(f, "reduction order: ");
    f.clear();
    if (!wdvv_check(4, &f)) n.fail_all(f, "WDVV: ");
    f.clear();
    const YTruncation t{3, 9, 1};
    if (!series_equal(j_function(t), j_function_axiom(t), &f)) n.fail_all(f, "J forms: ");
    n.info("200 keys, WDVV d<=4, J forms d<=3");
  });
}

CheckResult check_identities(const RunConfig&) {
  return timed("identities", [&](Notes& n) {
    const auto t0 = Clock::now();
    for (int k = 1; k <= 30; ++k)
      if (!harmonic_identity(k))
        n.fail("harmonic n=" + std::to_string(k) + ": " + to_string(harmonic_alternating_sum(k)));
    std::vector<std::string> f;
    if (!binomial_collapse_grid(3, 3, 3, 3, &f)) n.fail_all(f, "binomial: ");
    const double s = seconds_since(t0);
    if (s > 1) n.fail("took " + fmt_seconds(s));
  });
}

CheckResult check_mirror(const RunConfig& c) {
  return timed("mirror-structure", [&](Notes& n) {
    const YTruncation t{c.dmax, c.wmax, c.psi};
    std::vector<std::string> f;
    const std::array<YPoly, 3> K = {mirror_K(0, t), mirror_K(1, t), mirror_K(2, t)};
    YPoly y00;
    YKey one = ykey(t.psi);
    one[kY00] = 1;
    add_term(y00, one, 1);
    if (!series_equal(degree_part(K[2], 2, 0), y00, 1, &f)) n.fail_all(f, "K2 degree 0: ");
    f.clear();
    const CohomologySeries T = big_T(t), J = big_J(t);
    if (!series_equal(T, J, &f)) n.fail_all(f, "TT vs JJ: ");
    f.clear();
    if (!grading_check(T, &f) || !grading_check(J, &f)) n.fail_all(f, "grading: ");
    f.clear();
    if (!euler_identity_holds(T, K, t, &f) || !euler_identity_holds(J, K, t, &f)) n.fail_all(f, "Euler: ");
    f.clear();

    // tropical side: phi_i against JJ, and phi_{i,1} against K_{2-i}
    const int k = std::min(c.kmax, 3);
    const TropicalEngine& e = cached_engine(c.seed, k, engine_options(c, c.dmax));
    const int order = e.ring().top_order() + 1;
    const YTruncation tp{c.dmax, c.wmax, order};
    const CohomologySeries Jp = big_J(tp);
    const std::array<YPoly, 3> Kp = {mirror_K(0, tp), mirror_K(1, tp), mirror_K(2, tp)};
    const PointWindow w{k, c.dmax, tp.wmax, c.mbar, order};
    const auto phi = t_trop(e, tp.wmax);
    for (int i = 0; i < 3; ++i) {
      const UPoly full = expand_degree_marker(phi[i], tp.wmax);
      if (!point_ring_equal(full, Jp[i], i, w, &f)) n.fail_all(f, "phi" + std::to_string(i) + " vs JJ: ");
      f.clear();
      UPoly first;
      for (const auto& [u, v] : full) {
        if (u[0] != 1) continue;
        UKey lowered = u;
        lowered[0] = 0;
        first.emplace(std::move(lowered), v);
      }
      if (!point_ring_equal(first, Kp[2 - i], i - 1, w, &f))
        n.fail_all(f, "phi" + std::to_string(i) + ",1 vs K" + std::to_string(2 - i) + ": ");
      f.clear();
    }
    n.info("classical d<=" + std::to_string(t.dmax) + " psi<" + std::to_string(t.psi) + ", tropical k=" +
           std::to_string(k));
  });
}

VerificationReport run_verification(const RunConfig& c) {
  VerificationReport rep;
  rep.tier = c.tier;
  rep.seeds = {c.seed, c.seed + 1, c.seed + 2};
  rep.checks.push_back(check_primary_counts(c));
  rep.checks.push_back(check_independence(c));
  rep.checks.push_back(check_scattering(c));
  rep.checks.push_back(check_potential(c));
  rep.checks.push_back(check_fundamental_class(c));
  rep.checks.push_back(check_oracle_equality(c));
  rep.checks.push_back(check_oracle_consistency(c));
  rep.checks.push_back(check_identities(c));
  rep.checks.push_back(check_mirror(c));
  return rep;
}

}  // namespace p2trop
