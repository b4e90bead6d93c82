#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tubestab {

enum class ErrorKind {
  InvalidBracket,
  NoConvergence,
  SingularMatrix,
  DegenerateInput,
  OutOfDomain,
  InvalidSpectrum,
  InvalidArgument,
  Unsupported,
  InconsistentInput,
  NegativeBase,
  SingularJacobian,
  NonFiniteState,
  NegativeConcentration,
  InsufficientData,
  ParseError,
  UnknownKey,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Exception carrying a machine-checkable kind. All library failures use it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tubestab
