#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sphereflow {

enum class ErrorKind {
  TooFewVertices,
  DegenerateSegment,
  CoincidentPoints,
  NotAdmissible,
  InsufficientData,
  DomainError,
  PreconditionViolation,
  StepTooLarge,
  SelfIntersection,
  Degenerate,
  NonConvergent,
  ConfigParse,
  IO,
  NotSimple,
  MissingArtifacts,
};

std::string_view to_string(ErrorKind kind);

/// Every recoverable failure in the library is reported as an Error carrying its kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace sphereflow
