#pragma once

#include <stdexcept>
#include <string>

namespace scherk {

enum class ErrorCode {
  CoincidentPoints,
  DegenerateSide,
  MissingDecoration,
  TooLarge,
  DecorationOverlap,
  MeshFailure,
  NonConvergence,
  SingularSystem,
  ArcOutsideDomain,
  MeshMismatch,
  NotAnAnnulus,
  NotAdmissibleParent,
  NotAdmissible,
  NoAdmissibleTau,
  Overshoot,
  DomainError,
  ParseError,
  IoError,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace scherk
