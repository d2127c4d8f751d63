#include "scherk/errors.hpp"

namespace scherk {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::DegenerateSide: return "DegenerateSide";
    case ErrorCode::MissingDecoration: return "MissingDecoration";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DecorationOverlap: return "DecorationOverlap";
    case ErrorCode::MeshFailure: return "MeshFailure";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::ArcOutsideDomain: return "ArcOutsideDomain";
    case ErrorCode::MeshMismatch: return "MeshMismatch";
    case ErrorCode::NotAnAnnulus: return "NotAnAnnulus";
    case ErrorCode::NotAdmissibleParent: return "NotAdmissibleParent";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::NoAdmissibleTau: return "NoAdmissibleTau";
    case ErrorCode::Overshoot: return "Overshoot";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

}  // namespace scherk
