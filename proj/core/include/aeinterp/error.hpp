#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace aeinterp {

enum class ErrorCode {
  kLengthMismatch,
  kNonFinite,
  kNonIncreasingTime,
  kEmpty,
  kDegenerateSpan,
  kTooFewPoints,
  kTooManyPoints,
  kSingularSystem,
  kOutOfRange,
  kEmptyArchitecture,
  kShapeMismatch,
  kCacheMismatch,
  kInvalidConfig,
  kDiverged,
  kInvalidSpec,
  kUnknownVersion,
  kCountMismatch,
  kCorrupt,
  kParse,
  kIo,
};

/// Stable identifier used in machine-readable error lines, e.g. "NonFinite".
std::string_view to_string(ErrorCode code);

/// The single exception type thrown by the library. `index()` carries the
/// offending element (sample, row, layer or epoch) when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what,
        std::optional<std::size_t> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> index_;
};

}  // namespace aeinterp
