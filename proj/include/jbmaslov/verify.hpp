#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace jbmaslov {

struct SuiteResult {
  std::string suite;
  int cases = 0;
  int failures = 0;
  std::vector<std::string> diagnostics;  // one line per failing case (capped)

  bool passed() const { return failures == 0 && cases > 0; }
};

/// axioms, spectra, perturbation, subdivision, homotopy, additivity, loops,
/// formula-e, leray, bridge.
const std::vector<std::string>& suite_names();

/// Runs `count` random cases of the named property sweep. Deterministic in
/// seed. Throws InvalidArgument for an unknown suite.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, int count);

}  // namespace jbmaslov
