#pragma once

// Acceptance criteria over the built-in corpus. Results carry no timing so
// two runs with the same seed serialize identically.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "jacobel/cli/format.hpp"

namespace jacobel::cli {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::size_t checks = 0;
  std::string detail;
};

struct Criterion {
  int id;
  std::string_view title;
  CriterionResult (*run)(std::uint64_t seed);
};

/// Criteria 1-8; criterion 9 (determinism) is run_determinism().
std::span<const Criterion> criteria();

/// Runs criteria 1-8 twice and compares the serialized results.
CriterionResult run_determinism(std::uint64_t seed);

Json to_json(const CriterionResult& result);

}  // namespace jacobel::cli
