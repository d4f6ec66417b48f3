#pragma once

#include <stdexcept>
#include <string>

namespace bddts {

enum class ErrorCode {
  ParseError,
  UnboundVariable,
  SortMismatch,
  DomainTooLarge,
  IncompatibleAssignments,
  NonGroundImage,
  UnknownLocation,
  UnknownGateOrVariable,
  ValidationFailed,
  IncompatibleModels,
  NotSaturated,
  IniNotTotal,
  IniViolatesIG,
  NotOutputRich,
  RenamingNotDerivable,
  RenamingUndefined,
  GateMismatch,
  InvalidModel,
  Io,
};

const char* errorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bddts
