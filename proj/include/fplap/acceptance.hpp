#pragma once

#include <string>
#include <vector>

namespace fplap {

struct CriterionResult {
  int id = 0;
  std::string name;
  std::string expected;
  std::string got;
  std::string tol;
  bool pass = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::string detail;
};

struct AcceptanceOptions {
  int jobs = 1;
  /// Criterion ids to run; empty means all.
  std::vector<int> only;
};

/// Runs the acceptance criteria 1..11 in order. A criterion passes when its
/// numerical check holds and it finished within its time budget.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts = {});

/// "[PASS] 3 identity: got ... expected ... tol ... (0.12 s)".
std::string format_line(const CriterionResult& r);

}  // namespace fplap
