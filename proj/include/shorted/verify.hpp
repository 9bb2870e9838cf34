#pragma once

// Named property suites over generated instances. Each suite draws `count`
// instances from a stream seeded by `seed` and counts an instance as passed
// when every check on it holds.

#include <cstdint>
#include <string>
#include <vector>

namespace shorted::verify {

struct SuiteResult {
  std::string name;
  int total = 0;
  int passed = 0;
  std::vector<std::string> failures;  // first few failure descriptions
  double seconds = 0.0;

  bool ok() const { return total > 0 && passed == total; }
};

/// Suites: albert, albert-exact, sqrt-independence, variational, quotient,
/// order, douglas, ranges, extremal, infimum, determinism, kernel,
/// square-root, pairs.
const std::vector<std::string>& suite_names();

/// Throws shorted::Error(Validation) for an unknown suite name.
SuiteResult run_suite(const std::string& name, int count, std::uint64_t seed);

}  // namespace shorted::verify
