#pragma once

// The jacobel subcommands. Each returns a certificate (emitted verbatim with
// --json), a human-readable rendering and the process exit code.

#include <cstdint>
#include <optional>
#include <string>

#include "jacobel/cli/document.hpp"
#include "jacobel/cli/format.hpp"
#include "jacobel/error.hpp"

namespace jacobel::cli {

inline constexpr std::string_view kToolVersion = "1.0.0";

enum ExitCode : int { kExitOk = 0, kExitViolation = 1, kExitInputError = 2 };

struct CommandResult {
  Json certificate;
  std::string text;
  int exit_code = kExitOk;
};

enum class Expectation { kSemistable, kQuasistable, kStable };
std::optional<Expectation> parse_expectation(std::string_view text);

struct StabilityRequest {
  std::optional<SheafClass> multidegree;  // default: the twisted class at the marked point
  std::optional<Expectation> expect;
  bool table = false;
};

struct AbelRequest {
  bool oracle = false;
  bool all_choices = false;
  bool parallel = false;
};

CommandResult cmd_validate(const CurveDocument& document);
CommandResult cmd_stability(const CurveDocument& document, const StabilityRequest& request);
CommandResult cmd_twister(const CurveDocument& document, bool oracle);
CommandResult cmd_abel(const CurveDocument& document, const AbelRequest& request);
CommandResult cmd_enumerate(const CurveDocument& document);
CommandResult cmd_selftest(std::uint64_t seed);

/// Maps library errors to exit codes: invariant failures are 1, bad input is 2.
int exit_code_for(const Error& error);

}  // namespace jacobel::cli
