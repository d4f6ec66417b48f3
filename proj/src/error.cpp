#include "bddts/error.hpp"

namespace bddts {

const char* errorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::SortMismatch: return "SortMismatch";
    case ErrorCode::DomainTooLarge: return "DomainTooLarge";
    case ErrorCode::IncompatibleAssignments: return "IncompatibleAssignments";
    case ErrorCode::NonGroundImage: return "NonGroundImage";
    case ErrorCode::UnknownLocation: return "UnknownLocation";
    case ErrorCode::UnknownGateOrVariable: return "UnknownGateOrVariable";
    case ErrorCode::ValidationFailed: return "ValidationFailed";
    case ErrorCode::IncompatibleModels: return "IncompatibleModels";
    case ErrorCode::NotSaturated: return "NotSaturated";
    case ErrorCode::IniNotTotal: return "IniNotTotal";
    case ErrorCode::IniViolatesIG: return "IniViolatesIG";
    case ErrorCode::NotOutputRich: return "NotOutputRich";
    case ErrorCode::RenamingNotDerivable: return "RenamingNotDerivable";
    case ErrorCode::RenamingUndefined: return "RenamingUndefined";
    case ErrorCode::GateMismatch: return "GateMismatch";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace bddts
