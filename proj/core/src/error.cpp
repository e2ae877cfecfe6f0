#include "mfu/error.hpp"

namespace mfu {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidControl: return "invalid control";
    case ErrorCode::InvalidStart: return "invalid start";
    case ErrorCode::NonConvergence: return "non-convergence";
    case ErrorCode::NonLogConcave: return "non-log-concave";
    case ErrorCode::Initialization: return "initialization";
    case ErrorCode::DimensionMismatch: return "dimension mismatch";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : Error(code, std::string(to_string(code)) + " error: " + message, std::nullopt) {}

Error::Error(ErrorCode code, const std::string& message, std::optional<std::size_t> k)
    : std::runtime_error(message), code_(code), coordinate_(k) {}

Error Error::at_coordinate(std::size_t k) const {
  if (coordinate_) return *this;
  return Error(code_, "coordinate " + std::to_string(k + 1) + ": " + what(), k);
}

}  // namespace mfu
