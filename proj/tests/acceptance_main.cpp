// Acceptance gate: runs every built-in verification criterion and prints one
// pass/fail line each. Exit code 0 iff all pass.

#include <cstdlib>
#include <iostream>

#include "permstat/acceptance.hpp"

int main() {
  std::uint64_t seed = 1;
  if (const char* env = std::getenv("PERMSTAT_SEED"))
    seed = std::strtoull(env, nullptr, 10);
  const auto verdicts = permstat::run_acceptance(seed);
  permstat::print_verdicts(verdicts, std::cout);
  const bool ok = permstat::all_pass(verdicts);
  std::cout << (ok ? "ALL PASS" : "FAILURES PRESENT") << "\n";
  return ok ? 0 : 1;
}
