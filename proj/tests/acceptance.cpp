// Acceptance run: one PASS/FAIL line per criterion at the extended tier.
// Exit code 0 iff every criterion passes.

#include <iostream>

#include "p2trop/verify.hpp"

int main() {
  using namespace p2trop;
  const RunConfig c = tier_config("extended");
  const VerificationReport rep = run_verification(c);
  int n = 0;
  for (const auto& r : rep.checks)
    std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << ++n << " " << r.name << ": " << r.detail << " ["
              << r.seconds << "s]\n";
  std::cout << (rep.pass() ? "ALL PASS" : "SOME FAILED") << "\n";
  return rep.pass() ? 0 : 1;
}
