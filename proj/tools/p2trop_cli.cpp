// p2trop: command-line front end.
//
// Exit codes: 0 success, 1 failed check, 2 usage error, 3 internal error.
// Files land in --out-dir, else $P2TROP_OUTPUT_DIR, else the working directory.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "p2trop/brokenlines.hpp"
#include "p2trop/generality.hpp"
#include "p2trop/identities.hpp"
#include "p2trop/invariants.hpp"
#include "p2trop/mirror.hpp"
#include "p2trop/oracle.hpp"
#include "p2trop/verify.hpp"

using namespace p2trop;
using nlohmann::json;

namespace {

constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;
constexpr int kInternal = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::filesystem::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("P2TROP_OUTPUT_DIR"); env && *env) return env;
  return ".";
}

void write_file(const std::filesystem::path& p, const std::string& text) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << text;
}

// Prints to stdout, or writes to `out` when given.
void emit(const json& j, const std::string& out) {
  const std::string text = j.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
  }
}

Point parse_point(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError("point must be x,y: " + s);
  try {
    return {parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1))};
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

// Arrangement source: --arr file or --k/--seed.
struct ArrangementFlags {
  std::string file;
  int k = 2;
  uint64_t seed = 1;
  int probe_dmax = 2;

  void attach(CLI::App* app) {
    app->add_option("--arr", file, "arrangement JSON file");
    app->add_option("--k", k, "number of marked points when generating")->check(CLI::Range(0, kMaxPoints));
    app->add_option("--seed", seed, "generator seed");
  }

  Arrangement load() const {
    if (file.empty()) {
      GeneratorOptions go;
      go.probe.dmax = probe_dmax;
      return generate_arrangement(seed, k, go);
    }
    std::ifstream f(file);
    if (!f) throw UsageError("cannot read " + file);
    try {
      return arrangement_from_json(json::parse(f));
    } catch (const json::exception& e) {
      throw UsageError(file + ": " + e.what());
    } catch (const std::invalid_argument& e) {
      throw UsageError(file + ": " + e.what());
    }
  }
};

json series_json(const Series& s) { return to_json(s); }

json ypoly_json(const YPoly& p) {
  json out = json::array();
  for (const auto& [k, c] : p) out.push_back({{"term", to_string(k)}, {"coeff", to_string(c)}});
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical descendent invariants of the projective plane"};
  app.require_subcommand(1);
  std::string out_dir;
  app.add_option("--out-dir", out_dir, "directory for table and report files");

  // gen-arrangement
  auto* gen = app.add_subcommand("gen-arrangement", "seeded general arrangement as JSON");
  int gen_k = 2;
  uint64_t gen_seed = 1;
  GeneratorOptions gen_opt;
  std::string gen_out;
  gen->add_option("--k", gen_k, "number of marked points")->required()->check(CLI::Range(0, kMaxPoints));
  gen->add_option("--seed", gen_seed, "generator seed")->required();
  gen->add_option("--dmax", gen_opt.probe.dmax, "degree cutoff of the probe diagram");
  gen->add_option("--box-lo", gen_opt.box_lo, "lower coordinate bound");
  gen->add_option("--box-hi", gen_opt.box_hi, "upper coordinate bound");
  gen->add_option("--max-den", gen_opt.max_denominator, "largest coordinate denominator");
  gen->add_option("--retries", gen_opt.retries, "rejection-sampling budget");
  gen->add_option("--out", gen_out, "output file (default stdout)");

  // scatter
  auto* scatter = app.add_subcommand("scatter", "scattering diagram as JSON");
  ArrangementFlags scatter_arr;
  DiagramOptions scatter_opt;
  std::string scatter_out;
  scatter_arr.attach(scatter);
  scatter->add_option("--dmax", scatter_opt.dmax, "x-exponent cap");
  scatter->add_option("--max-order", scatter_opt.max_order, "largest descendent order, -1 for k-1");
  scatter->add_option("--out", scatter_out, "output file (default stdout)");

  // potential
  auto* potential = app.add_subcommand("potential", "W_{k,0} and W_{k,mbar} at Q or at a point");
  ArrangementFlags pot_arr;
  int pot_dmax = 2, pot_mbar = 0;
  std::string pot_at;
  potential->add_option("--dmax", pot_dmax, "x-exponent cap");
  potential->add_option("--mbar", pot_mbar, "y_{0,0} truncation")->check(CLI::NonNegativeNumber);
  potential->add_option("--at", pot_at, "endpoint x,y (default Q)");
  pot_arr.attach(potential);

  // broken-lines
  auto* lines = app.add_subcommand("broken-lines", "broken lines ending at a point");
  ArrangementFlags lines_arr;
  int lines_dmax = 2;
  std::string lines_at;
  lines_arr.attach(lines);
  lines->add_option("--dmax", lines_dmax, "x-exponent cap");
  lines->add_option("--at", lines_at, "endpoint x,y (default Q)");

  // invariant
  auto* inv = app.add_subcommand("invariant", "one tropical descendent invariant");
  ArrangementFlags inv_arr;
  DescendentKey inv_key;
  std::string inv_r;
  inv_arr.attach(inv);
  inv->add_option("--d", inv_key.d, "curve degree")->required()->check(CLI::PositiveNumber);
  inv->add_option("--r", inv_r, "r-vector, e.g. 2,1,1 (default all ones)");
  inv->add_option("--m", inv_key.m, "T_0 insertions")->check(CLI::NonNegativeNumber);
  inv->add_option("--nu", inv_key.nu, "psi power at the x-marking")->check(CLI::NonNegativeNumber);
  inv->add_option("--cls", inv_key.cls, "class of S_i(A)")->check(CLI::Range(0, 2));

  // table
  auto* table = app.add_subcommand("table", "all compatible invariants, CSV and JSON");
  int table_dmax = 1, table_kmax = 2, table_mbar = 2;
  uint64_t table_seed = 1;
  table->add_option("--dmax", table_dmax, "largest degree")->check(CLI::Range(1, 3));
  table->add_option("--kmax", table_kmax, "largest number of marked points")->check(CLI::Range(1, kMaxPoints));
  table->add_option("--mbar", table_mbar, "largest m")->check(CLI::NonNegativeNumber);
  table->add_option("--seed", table_seed, "arrangement seed");

  // oracle
  auto* oracle = app.add_subcommand("oracle", "classical descendent invariants");
  int oracle_d = -1;
  std::string oracle_ins;
  oracle->add_option("--d", oracle_d, "curve degree")->check(CLI::NonNegativeNumber);
  oracle->add_option("--ins", oracle_ins, "insertions, e.g. \"psi^1 T2, T2\" or \"T2*8\"");
  auto* jfun = oracle->add_subcommand("jfun", "J function coefficients");
  int jfun_dmax = 2, jfun_wmax = 4;
  jfun->add_option("--dmax", jfun_dmax, "largest degree")->check(CLI::NonNegativeNumber);
  jfun->add_option("--wmax", jfun_wmax, "largest number of y-factors")->check(CLI::NonNegativeNumber);
  auto* idents = oracle->add_subcommand("verify-identities", "harmonic and binomial identities");
  int ident_nmax = 30;
  idents->add_option("--nmax", ident_nmax, "largest n for the harmonic identity")->check(CLI::PositiveNumber);

  // verify
  auto* verify = app.add_subcommand("verify", "acceptance suite");
  std::string tier = "quick";
  uint64_t verify_seed = 1;
  double budget = 3600;
  bool mutate = false;
  verify->add_option("--tier", tier, "quick, standard or extended")
      ->check(CLI::IsMember({"quick", "standard", "extended"}));
  verify->add_option("--seed", verify_seed, "first arrangement seed");
  verify->add_option("--time-budget", budget, "seconds allowed for the degree 3 count");
  verify->add_flag("--mutate-mult", mutate, "fault injection: scale Mult^1 by 2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*gen) {
      emit(to_json(generate_arrangement(gen_seed, gen_k, gen_opt)), gen_out);
      return 0;
    }
    if (*scatter) {
      scatter_arr.probe_dmax = scatter_opt.dmax;
      emit(to_json(build_diagram(scatter_arr.load(), scatter_opt)), scatter_out);
      return 0;
    }
    if (*potential) {
      pot_arr.probe_dmax = pot_dmax;
      const Arrangement a = pot_arr.load();
      DiagramOptions dopt;
      dopt.dmax = pot_dmax;
      const ScatteringDiagram d = build_diagram(a, dopt);
      const Point x = pot_at.empty() ? a.Q : parse_point(pot_at);
      const Series w0 = potential_at(d, x);
      RingConfig cfg = d.config();
      cfg.mbar = pot_mbar;
      const Series wm = y0_var(cfg) + that_operator(with_config(w0, cfg));
      emit({{"at", to_json(x)}, {"W_k0", series_json(w0)}, {"W_kmbar", series_json(wm)}, {"mbar", pot_mbar}}, "");
      return 0;
    }
    if (*lines) {
      lines_arr.probe_dmax = lines_dmax;
      const Arrangement a = lines_arr.load();
      DiagramOptions dopt;
      dopt.dmax = lines_dmax;
      const ScatteringDiagram d = build_diagram(a, dopt);
      const Point x = lines_at.empty() ? a.Q : parse_point(lines_at);
      json out = json::array();
      for (const auto& b : enumerate_broken_lines(d, x)) out.push_back(to_json(b));
      emit(out, "");
      return 0;
    }
    if (*inv) {
      if (inv_r.empty()) {
        inv_key.r.r.assign(inv_arr.file.empty() ? inv_arr.k : inv_arr.load().k(), 1);
      } else {
        try {
          inv_key.r = parse_rvector(inv_r);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }
      InvariantOptions io;
      io.dmax = inv_key.d;
      io.mbar = inv_key.m;
      // without --k the r-vector fixes the number of points; missing entries are 0
      const int given = static_cast<int>(inv_key.r.r.size());
      if (inv_arr.file.empty()) {
        const int k = inv->count("--k") ? inv_arr.k : given;
        if (given > k) throw UsageError("--r has more entries than --k");
        inv_key.r.r.resize(k, 0);
        emit(to_json(generate_engine(inv_arr.seed, k, io).value(inv_key)), "");
      } else {
        const Arrangement a = inv_arr.load();
        if (given > a.k()) throw UsageError("--r has more entries than the arrangement has points");
        inv_key.r.r.resize(a.k(), 0);
        emit(to_json(tropical_invariant(a, inv_key, io)), "");
      }
      return 0;
    }
    if (*table) {
      const auto dir = output_dir(out_dir);
      InvariantOptions io;
      io.dmax = table_dmax;
      io.mbar = table_mbar;
      std::ostringstream csv;
      csv << "k,d,r,m,nu,cls,value,classical,seed\n";
      json rows = json::array();
      for (int k = 1; k <= table_kmax; ++k) {
        const TropicalEngine e = generate_engine(table_seed, k, io);
        for (const auto& r : invariant_table(e)) {
          const Rational cl = classical_invariant(r.key.classical());
          json j = to_json(r);
          j["k"] = k;
          j["classical"] = to_string(cl);
          rows.push_back(j);
          csv << k << "," << r.key.d << ",\"" << to_string(r.key.r) << "\"," << r.key.m << "," << r.key.nu << ","
              << r.key.cls << "," << to_string(r.value) << "," << to_string(cl) << "," << r.seed << "\n";
        }
      }
      write_file(dir / "table.csv", csv.str());
      write_file(dir / "table.json", rows.dump(2) + "\n");
      emit({{"rows", rows.size()}, {"csv", (dir / "table.csv").string()}, {"json", (dir / "table.json").string()}}, "");
      return 0;
    }
    if (*oracle) {
      if (*jfun) {
        const YTruncation t{jfun_dmax, jfun_wmax, 1};
        const CohomologySeries J = j_function(t);
        emit({{"T0", ypoly_json(J[0])}, {"T1", ypoly_json(J[1])}, {"T2", ypoly_json(J[2])}}, "");
        return 0;
      }
      if (*idents) {
        bool ok = true;
        json harmonic = json::array();
        for (int n = 1; n <= ident_nmax; ++n) {
          const bool h = harmonic_identity(n);
          ok = ok && h;
          harmonic.push_back({{"n", n}, {"sum", to_string(harmonic_alternating_sum(n))}, {"pass", h}});
        }
        std::vector<std::string> failures;
        const bool grid = binomial_collapse_grid(3, 3, 3, 3, &failures);
        emit({{"harmonic", harmonic}, {"binomial_grid", grid}, {"binomial_failures", failures}, {"pass", ok && grid}}, "");
        return ok && grid ? 0 : kCheckFailed;
      }
      if (oracle_d < 0 || oracle_ins.empty()) throw UsageError("oracle needs --d and --ins, or a subcommand");
      std::vector<Insertion> ins;
      try {
        ins = parse_insertions(oracle_ins);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const GWKey key = GWKey::make(oracle_d, ins);
      emit({{"key", to_string(key)}, {"value", to_string(classical_invariant(key))}}, "");
      return 0;
    }
    if (*verify) {
      RunConfig c = tier_config(tier);
      c.seed = verify_seed;
      c.time_budget = budget;
      c.mutate_mult = mutate;
      const VerificationReport rep = run_verification(c);
      std::cout << rep.to_text();
      const auto dir = output_dir(out_dir);
      write_file(dir / "verify_report.json", rep.to_json().dump(2) + "\n");
      return rep.pass() ? 0 : kCheckFailed;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kUsage;
  } catch (const GeneralityError& e) {
    std::cerr << "arrangement is not general: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
