#pragma once

// Verification suite shared by `p2trop verify` and the acceptance binary.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace p2trop {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // computed vs expected, or the first failures
  double seconds = 0;
};

struct VerificationReport {
  std::string tier;
  std::vector<uint64_t> seeds;
  std::vector<CheckResult> checks;

  bool pass() const;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

struct RunConfig {
  std::string tier = "quick";
  uint64_t seed = 1;     // first arrangement seed; independence uses seed, seed+1, seed+2
  int kmax = 2;
  int dmax = 1;
  int mbar = 2;
  int psi = 3;           // psi-cutoff for the mirror comparison
  int wmax = 5;          // y-factor bound for the mirror comparison
  int count_dmax = 2;    // largest d for the primary counts
  int retries = 200;
  double time_budget = 3600;  // seconds for the d = 3 count
  bool mutate_mult = false;   // fault injection: perturb Mult^1
};

// quick: k <= 2, d <= 1; standard: k <= 4, d <= 2; extended: standard plus d = 3.
RunConfig tier_config(const std::string& tier);

// Each check corresponds to one acceptance criterion.
CheckResult check_primary_counts(const RunConfig& c);
CheckResult check_independence(const RunConfig& c);
CheckResult check_scattering(const RunConfig& c);
CheckResult check_potential(const RunConfig& c);
CheckResult check_fundamental_class(const RunConfig& c);
CheckResult check_oracle_equality(const RunConfig& c);
CheckResult check_oracle_consistency(const RunConfig& c);
CheckResult check_identities(const RunConfig& c);
CheckResult check_mirror(const RunConfig& c);

VerificationReport run_verification(const RunConfig& c);

}  // namespace p2trop
