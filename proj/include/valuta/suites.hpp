#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "valuta/valuation.hpp"

namespace valuta {

/// Invalid command-line configuration (unknown suite, float-only check in exact mode, ...).
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

enum class Mode { exact, floating };

struct SuiteConfig {
  int m = 2;
  int rank = 2;
  std::uint64_t seed = 1;
  Mode mode = Mode::exact;
  int samples = -1;  ///< -1 selects the suite's default
  bool inject_fault = false;
};

/// covariance, detid, equivariance, klain, mcmullen, transfer.
const std::vector<std::string>& suite_names();

/// Runs one verification suite. Results depend only on the configuration.
Report run_suite(const std::string& name, const SuiteConfig& config);

}  // namespace valuta
