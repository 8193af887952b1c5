#include "sphereflow/error.hpp"

namespace sphereflow {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::TooFewVertices: return "TooFewVertices";
    case ErrorKind::DegenerateSegment: return "DegenerateSegment";
    case ErrorKind::CoincidentPoints: return "CoincidentPoints";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::SelfIntersection: return "SelfIntersection";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::ConfigParse: return "ConfigParse";
    case ErrorKind::IO: return "IO";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::MissingArtifacts: return "MissingArtifacts";
  }
  return "Unknown";
}

}  // namespace sphereflow
