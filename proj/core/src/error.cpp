#include "ghl/error.hpp"

namespace ghl {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidGraph: return "InvalidGraph";
    case ErrorKind::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorKind::InvalidSpace: return "InvalidSpace";
    case ErrorKind::PointNotInSpace: return "PointNotInSpace";
    case ErrorKind::InvalidCorrespondence: return "InvalidCorrespondence";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::FullSubset: return "FullSubset";
    case ErrorKind::SamePoint: return "SamePoint";
    case ErrorKind::BadBoundary: return "BadBoundary";
    case ErrorKind::ScriptError: return "ScriptError";
    case ErrorKind::InvalidMesh: return "InvalidMesh";
    case ErrorKind::NotAClosedSurface: return "NotAClosedSurface";
    case ErrorKind::LinkMismatch: return "LinkMismatch";
    case ErrorKind::DegenerateNeck: return "DegenerateNeck";
    case ErrorKind::NotASimpleCycle: return "NotASimpleCycle";
    case ErrorKind::UnrecognizedLink: return "UnrecognizedLink";
    case ErrorKind::MissingTag: return "MissingTag";
    case ErrorKind::BudgetViolation: return "BudgetViolation";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message) {}

BudgetViolationError::BudgetViolationError(int deficit, const std::string& message)
    : Error(ErrorKind::BudgetViolation, message), deficit_(deficit) {}

}  // namespace ghl
