#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace cyclab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the ten end-to-end checks. Each check uses its own fixed seed, so
/// results do not depend on which checks run.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& only = {});

/// One check by number (1..10).
CriterionResult run_criterion(int id);

std::string format_result(const CriterionResult& r);

}  // namespace cyclab
