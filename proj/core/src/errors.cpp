#include "tubestab/errors.hpp"

namespace tubestab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidBracket: return "InvalidBracket";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::InvalidSpectrum: return "InvalidSpectrum";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::InconsistentInput: return "InconsistentInput";
    case ErrorKind::NegativeBase: return "NegativeBase";
    case ErrorKind::SingularJacobian: return "SingularJacobian";
    case ErrorKind::NonFiniteState: return "NonFiniteState";
    case ErrorKind::NegativeConcentration: return "NegativeConcentration";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownKey: return "UnknownKey";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace tubestab
