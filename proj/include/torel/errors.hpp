#pragma once

#include <stdexcept>
#include <string>

namespace torel {

enum class ErrorKind {
  CompositionMismatch,
  IndexOutOfRange,
  NotALoop,
  ParseError,
  InvariantViolation,
  UnknownCurve,
  SurfaceMismatch,
  StepFailure,
  UnknownName,
  UnknownSymmetry,
  InvalidDictionary,
  StrandMismatch,
  InvalidArc,
  NotTransposition,
  IoError,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace torel
