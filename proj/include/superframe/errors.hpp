#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace superframe {

enum class ErrorKind {
  SingularMatrix,
  NotExpansive,
  NotAPermutation,
  NotAdmissible,
  UnsupportedDimension,
  DimensionLimit,
  InvalidGeometry,
  ShapeMismatch,
  SystemTooLarge,
  EmptyTestSet,
  IndexOutOfRange,
  Parse,
};

std::string_view to_string(ErrorKind kind);

/// Library failure carrying a stable kind that the CLI maps onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace superframe
