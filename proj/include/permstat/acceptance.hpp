#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace permstat {

// One verification check: an observed statistic against its pinned threshold
// plus the wall-time budget of its criterion.
struct AcceptanceVerdict {
  std::string id;
  std::string name;
  bool pass = false;
  double observed = 0.0;
  double threshold = 0.0;
  std::string comparator;  // "<=" or ">="
  std::string note;
  double seconds = 0.0;
  double time_cap = 0.0;
};

// Runs the full built-in verification suite. Deterministic in the seed.
std::vector<AcceptanceVerdict> run_acceptance(std::uint64_t seed);

bool all_pass(const std::vector<AcceptanceVerdict>& verdicts);
void print_verdicts(const std::vector<AcceptanceVerdict>& verdicts,
                    std::ostream& os);

}  // namespace permstat
