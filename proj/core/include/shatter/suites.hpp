#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace shatter {

// Named verification suites behind `verify-suite <name>` and the acceptance
// runner.  Each bundles one end-to-end claim checked by this library.
struct SuiteOptions {
  std::uint64_t seed = 1;
  int threads = 1;
  bool allow_expensive = false;
};

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string details;  // JSON payload with the measured quantities
};

const std::vector<std::string>& suite_names();
SuiteResult run_suite(std::string_view name, const SuiteOptions& opts);

// Reproducibility artifacts: the full textual outputs of the randomized
// pipelines, excluding timing/worker fields, so runs with different worker
// counts can be compared byte-for-byte.
std::string refute_a_artifact(std::uint64_t seed, int threads);
std::string claim2_artifact(std::uint64_t seed, int threads);
std::string conjecture_b_artifact(std::uint64_t seed, int threads);

}  // namespace shatter
