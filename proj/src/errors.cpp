#include "superframe/errors.hpp"

namespace superframe {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::NotExpansive: return "NotExpansive";
    case ErrorKind::NotAPermutation: return "NotAPermutation";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::DimensionLimit: return "DimensionLimit";
    case ErrorKind::InvalidGeometry: return "InvalidGeometry";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::SystemTooLarge: return "SystemTooLarge";
    case ErrorKind::EmptyTestSet: return "EmptyTestSet";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::Parse: return "ParseError";
  }
  return "Unknown";
}

}  // namespace superframe
