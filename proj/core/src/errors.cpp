#include "cqed/errors.hpp"

#include <utility>

namespace cqed {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidParameter: return "InvalidParameter";
    case ErrorKind::kDomainError: return "DomainError";
    case ErrorKind::kToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::kNotConverged: return "NotConverged";
    case ErrorKind::kMismatchedInputs: return "MismatchedInputs";
    case ErrorKind::kSpecError: return "SpecError";
    case ErrorKind::kBoundViolation: return "BoundViolation";
  }
  return "Error";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
      kind_(kind),
      detail_(detail) {}

InvalidParameter::InvalidParameter(std::string subject, const std::string& detail)
    : Error(ErrorKind::kInvalidParameter, subject + ": " + detail),
      subject_(std::move(subject)) {}

}  // namespace cqed
