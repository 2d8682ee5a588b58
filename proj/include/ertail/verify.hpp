#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ertail {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // short witness or counterexample description
};

// The full self-check suite: every library invariant exercised on seeded
// fixtures.  Deterministic for a fixed seed.
std::vector<CheckResult> run_all_checks(std::uint64_t seed = 20260815);

}  // namespace ertail
