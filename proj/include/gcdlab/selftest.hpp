#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gcdlab {

struct CheckOutcome {
  std::string name;
  bool passed = false;
  std::size_t cases = 0;
  double worst = 0.0;      // worst observed discrepancy (check-specific units)
  double tolerance = 0.0;
  std::string oracle;      // what the value was compared against
  std::string detail;      // first failure, if any
};

/// Runs the built-in invariant suite on instances drawn from `seed`. The
/// quick variant shrinks instance counts for interactive use.
std::vector<CheckOutcome> run_selftest(std::uint64_t seed, bool quick = false);

}  // namespace gcdlab
