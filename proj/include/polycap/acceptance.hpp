#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace polycap {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;   // worst observed margin and instance counts
  double seconds = 0.0;
  double limit_seconds = 0.0;  // 0 when unlimited
};

/// Runs the ten acceptance criteria in order. Each criterion is timed and
/// fails if it exceeds its runtime limit. When `progress` is set a line per
/// criterion is written as soon as it finishes.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 20240601, std::ostream* progress = nullptr);

/// One line: "[PASS] 3 oracle equivalence: ... (0.41 s)".
std::string format_criterion(const CriterionResult& result);

}  // namespace polycap
