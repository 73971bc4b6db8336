#pragma once

#include <stdexcept>
#include <string>

namespace neron {

enum class ErrorKind {
  NotDivisible,
  UnknownVariable,
  ResourceLimit,
  OrderMismatch,
  NotASubgroup,
  DivisionObstruction,
  LiftFailure,
  ShapeMismatch,
  NotFiniteDimensional,
  Precondition,
  SyntaxError,
  UndefinedName,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so the
/// CLI can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::ResourceLimit: return "ResourceLimit";
    case ErrorKind::OrderMismatch: return "OrderMismatch";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::DivisionObstruction: return "DivisionObstruction";
    case ErrorKind::LiftFailure: return "LiftFailure";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotFiniteDimensional: return "NotFiniteDimensional";
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UndefinedName: return "UndefinedName";
  }
  return "Error";
}

}  // namespace neron
