// Prints one PASS/FAIL line per acceptance criterion; exits nonzero on any FAIL.

#include <chrono>
#include <cstdio>
#include <string>

#include "jacobel/cli/commands.hpp"
#include "jacobel/cli/selftest.hpp"

using namespace jacobel::cli;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runtime budgets in seconds; 0 means none.
double budget(int id) {
  switch (id) {
    case 1: return 5.0;
    case 6: return 30.0;
    default: return 0.0;
  }
}

}  // namespace

int main() {
  const auto suite_start = Clock::now();
  bool all = true;
  for (const Criterion& criterion : criteria()) {
    const auto start = Clock::now();
    const CriterionResult result = criterion.run(kDefaultSeed);
    const double elapsed = seconds_since(start);
    const double limit = budget(criterion.id);
    const bool in_time = limit == 0.0 || elapsed < limit;
    const bool passed = result.passed && in_time;
    all = all && passed;
    std::printf("%s criterion %d: %s (%zu checks, %.2fs)%s%s\n", passed ? "PASS" : "FAIL", criterion.id,
                result.title.c_str(), result.checks, elapsed, result.detail.empty() ? "" : " - ",
                result.detail.c_str());
    if (!in_time) std::printf("     over the %.0fs budget\n", limit);
  }

  const auto start = Clock::now();
  const std::string first = cmd_selftest(kDefaultSeed).certificate.dump();
  const std::string second = cmd_selftest(kDefaultSeed).certificate.dump();
  const double total = seconds_since(suite_start);
  const bool identical = first == second;
  const bool passed = identical && total < 60.0;
  all = all && passed;
  std::printf("%s criterion 9: selftest certificates byte-identical across runs (%zu bytes, %.2fs; suite %.2fs)\n",
              passed ? "PASS" : "FAIL", first.size(), seconds_since(start), total);
  return all ? 0 : 1;
}
