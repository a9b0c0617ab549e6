#include "jacobel/error.hpp"

namespace jacobel {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyCurve: return "EmptyCurve";
    case ErrorCode::kTooManyComponents: return "TooManyComponents";
    case ErrorCode::kDisconnectedCurve: return "DisconnectedCurve";
    case ErrorCode::kDuplicateName: return "DuplicateName";
    case ErrorCode::kDanglingNodeEnd: return "DanglingNodeEnd";
    case ErrorCode::kNegativeGenus: return "NegativeGenus";
    case ErrorCode::kUnknownComponent: return "UnknownComponent";
    case ErrorCode::kUnknownNode: return "UnknownNode";
    case ErrorCode::kEmptySubcurve: return "EmptySubcurve";
    case ErrorCode::kOverlappingSubcurves: return "OverlappingSubcurves";
    case ErrorCode::kImproperSubcurve: return "ImproperSubcurve";
    case ErrorCode::kSizeMismatch: return "SizeMismatch";
    case ErrorCode::kInvalidPolarization: return "InvalidPolarization";
    case ErrorCode::kInvalidChainLength: return "InvalidChainLength";
    case ErrorCode::kSearchTooLarge: return "SearchTooLarge";
    case ErrorCode::kNoQuasistableTwister: return "NoQuasistableTwister";
    case ErrorCode::kDegreeMismatch: return "DegreeMismatch";
    case ErrorCode::kNotAdjacent: return "NotAdjacent";
    case ErrorCode::kNotReducibleNode: return "NotReducibleNode";
    case ErrorCode::kNotAdmissible: return "NotAdmissible";
    case ErrorCode::kMalformedDocument: return "MalformedDocument";
    case ErrorCode::kInvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace jacobel
