// One line per acceptance criterion; nonzero exit if any fails.

#include "sturmlab/verify.hpp"

#include <cstdio>

int main() {
  int failed = 0;
  for (const auto& check : sturm::verify::acceptance_checks()) {
    auto r = sturm::verify::run_check(check);
    std::printf("[%s] %2d %-28s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds,
                r.detail.c_str());
    std::fflush(stdout);
    failed += !r.passed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(sturm::verify::acceptance_checks().size()) - failed,
              sturm::verify::acceptance_checks().size());
  return failed ? 1 : 0;
}
