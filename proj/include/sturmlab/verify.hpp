#pragma once

// The acceptance checks, each at its pinned size and tolerance.

#include <functional>
#include <string>
#include <vector>

namespace sturm::verify {

struct CheckResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0;
};

struct Check {
  int id;
  std::string name;
  std::function<CheckResult()> run;
};

/// In id order, 1..11.
const std::vector<Check>& acceptance_checks();

/// Runs one check; an exception inside it becomes a failure with its message.
CheckResult run_check(const Check& c);
std::vector<CheckResult> run_all();

}  // namespace sturm::verify
