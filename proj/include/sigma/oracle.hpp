#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sigma {

// Exhaustive and seeded-random property sweeps, runnable from the CLI.
struct OracleConfig {
  std::size_t max_n = 5;
  std::vector<std::string> suites;  // empty means all
  std::uint64_t seed = 1;
};

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t passed = 0;
  std::vector<std::string> failures;  // first few only

  bool ok() const noexcept { return cases == passed; }
};

struct OracleReport {
  OracleConfig config;
  std::vector<SuiteResult> suites;

  bool ok() const noexcept;
};

const std::vector<std::string>& oracle_suite_names();

// Reads SIGMA_ORACLE_MAX_N when set. Throws InvalidArgument for a malformed
// value or one outside [1, 8].
std::size_t oracle_max_n_from_env(std::size_t fallback);

// Throws InvalidArgument for unknown suites or max_n outside [1, 8].
OracleReport run_oracle(const OracleConfig& config);

}  // namespace sigma
