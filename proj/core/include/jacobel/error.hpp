#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace jacobel {

enum class ErrorCode {
  kEmptyCurve,
  kTooManyComponents,
  kDisconnectedCurve,
  kDuplicateName,
  kDanglingNodeEnd,
  kNegativeGenus,
  kUnknownComponent,
  kUnknownNode,
  kEmptySubcurve,
  kOverlappingSubcurves,
  kImproperSubcurve,
  kSizeMismatch,
  kInvalidPolarization,
  kInvalidChainLength,
  kSearchTooLarge,
  kNoQuasistableTwister,
  kDegreeMismatch,
  kNotAdjacent,
  kNotReducibleNode,
  kNotAdmissible,
  kMalformedDocument,
  kInvariantViolation,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI exit-code mapping) can branch on the kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace jacobel
