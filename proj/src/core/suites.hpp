#pragma once

#include <string>
#include <vector>

#include "core/analysis.hpp"

namespace hypfill {

struct CheckResult {
  int criterion = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

// Run the numbered property checks (empty list = all of them).
std::vector<CheckResult> run_acceptance(const std::vector<int>& which = {});

// Named groups for the CLI `check` subcommand.
std::vector<std::string> suite_names();
std::vector<CheckResult> run_suite(const std::string& name);

std::string results_to_json(const std::vector<CheckResult>& results);

}  // namespace hypfill
