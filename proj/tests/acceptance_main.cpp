// Runs every suite criterion and prints one verdict line per criterion.
// Exit status is zero only when all of them pass.

#include <cstdio>
#include <exception>

#include "entkit/suite.hpp"

int main() {
  try {
    const auto results = entkit::run_suite({});
    int passed = 0;
    for (const auto& r : results) {
      std::puts(entkit::format_criterion_line(r).c_str());
      if (r.passed) ++passed;
    }
    std::printf("acceptance: %d/%zu criteria passed\n", passed,
                results.size());
    return passed == static_cast<int>(results.size()) ? 0 : 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "acceptance: aborted: %s\n", e.what());
    return 1;
  }
}
