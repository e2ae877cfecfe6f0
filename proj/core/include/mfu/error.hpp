#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace mfu {

enum class ErrorCode {
  InvalidControl,     // ControlSpec failed validation
  InvalidStart,       // zero-density or out-of-bounds starting point
  NonConvergence,     // an iteration cap was hit
  NonLogConcave,      // ARS detected a convex stretch of the log-density
  Initialization,     // ARS could not bracket the mode
  DimensionMismatch,
  Domain,             // argument outside its admissible range
  Parse,              // malformed CSV input
  Io,
};

const char* to_string(ErrorCode code) noexcept;

/// The single exception type thrown by the library.
///
/// `coordinate()` is set when the failure happened inside a Gibbs cycle and
/// holds the zero-based index of the coordinate being updated. The message
/// names that coordinate one-based, as users count parameters.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  const std::optional<std::size_t>& coordinate() const noexcept { return coordinate_; }

  /// Copy of this error tagged with a coordinate (first tag wins).
  Error at_coordinate(std::size_t k) const;

 private:
  Error(ErrorCode code, const std::string& message, std::optional<std::size_t> k);

  ErrorCode code_;
  std::optional<std::size_t> coordinate_;
};

}  // namespace mfu
