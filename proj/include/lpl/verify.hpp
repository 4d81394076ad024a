#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace lpl::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;  // measured numbers, for the report
};

/// Run one acceptance criterion (1-10).
CriterionResult criterion(int id);

/// Criterion ids of a suite: invariants, gibbs, convergence, all.
std::vector<int> suite_ids(const std::string& suite);

std::vector<CriterionResult> run_suite(const std::string& suite);

nlohmann::json report(const std::vector<CriterionResult>& results);

}  // namespace lpl::verify
