#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cyclescope::cli {

enum class VerifyLevel { quick, full };

struct SuiteResult {
  std::string name;
  bool passed = false;
  // Worst observed value of the suite's metric and the tolerance it is held to.
  double metric = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool passed() const;
  // One line per suite plus an overall verdict; contains no timings, so identical
  // inputs give byte-identical text.
  std::string to_text() const;
};

// Seeds derived from (seed, index) with splitmix64 so every task is independent of scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

VerifyReport run_verify(std::uint64_t seed, VerifyLevel level);

}  // namespace cyclescope::cli
