#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mot {

enum class ErrorCode {
  InvalidInput,
  DimensionMismatch,
  MassMismatch,
  NotInConvexOrder,
  PointOutsidePolytope,
  PointOutsideBox,
  AtomOutsideD,
  EmptyList,
  InvalidParameter,
  ParseError,
};

std::string_view to_string(ErrorCode code);

// Single exception type for all library failures; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mot
