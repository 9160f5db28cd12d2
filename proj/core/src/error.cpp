#include "aeinterp/error.hpp"

namespace aeinterp {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kNonIncreasingTime: return "NonIncreasingTime";
    case ErrorCode::kEmpty: return "Empty";
    case ErrorCode::kDegenerateSpan: return "DegenerateSpan";
    case ErrorCode::kTooFewPoints: return "TooFewPoints";
    case ErrorCode::kTooManyPoints: return "TooManyPoints";
    case ErrorCode::kSingularSystem: return "SingularSystem";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kEmptyArchitecture: return "EmptyArchitecture";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kCacheMismatch: return "CacheMismatch";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
    case ErrorCode::kDiverged: return "Diverged";
    case ErrorCode::kInvalidSpec: return "InvalidSpec";
    case ErrorCode::kUnknownVersion: return "UnknownVersion";
    case ErrorCode::kCountMismatch: return "CountMismatch";
    case ErrorCode::kCorrupt: return "Corrupt";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what,
             std::optional<std::size_t> index)
    : std::runtime_error(what), code_(code), index_(index) {}

}  // namespace aeinterp
