#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ghl {

enum class ErrorKind {
  InvalidGraph,
  DisconnectedGraph,
  InvalidSpace,
  PointNotInSpace,
  InvalidCorrespondence,
  TooLarge,
  EmptySubset,
  FullSubset,
  SamePoint,
  BadBoundary,
  ScriptError,
  InvalidMesh,
  NotAClosedSurface,
  LinkMismatch,
  DegenerateNeck,
  NotASimpleCycle,
  UnrecognizedLink,
  MissingTag,
  BudgetViolation,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every domain failure in the library is reported through this type. The
// kind is what callers dispatch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }
  // what() without the "Kind: " prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

class BudgetViolationError : public Error {
 public:
  BudgetViolationError(int deficit, const std::string& message);

  // c0 + 2k - ambient_c, always positive.
  int deficit() const noexcept { return deficit_; }

 private:
  int deficit_;
};

}  // namespace ghl
