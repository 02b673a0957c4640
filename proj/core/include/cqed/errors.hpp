#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cqed {

enum class ErrorKind {
  kInvalidParameter,
  kDomainError,
  kToleranceNotMet,
  kNotConverged,
  kMismatchedInputs,
  kSpecError,
  kBoundViolation,
};

std::string_view to_string(ErrorKind kind);

// Base of every error raised by the library. what() is a single line of the
// form "<Kind>: <detail>" so front ends can print it verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

// A domain invariant was violated. subject() names the invariant, e.g. "g" or
// "branching".
class InvalidParameter : public Error {
 public:
  InvalidParameter(std::string subject, const std::string& detail);
  const std::string& subject() const noexcept { return subject_; }

 private:
  std::string subject_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& detail)
      : Error(ErrorKind::kDomainError, detail) {}
};

class ToleranceNotMet : public Error {
 public:
  explicit ToleranceNotMet(const std::string& detail)
      : Error(ErrorKind::kToleranceNotMet, detail) {}
};

class NotConverged : public Error {
 public:
  explicit NotConverged(const std::string& detail)
      : Error(ErrorKind::kNotConverged, detail) {}
};

class MismatchedInputs : public Error {
 public:
  explicit MismatchedInputs(const std::string& detail)
      : Error(ErrorKind::kMismatchedInputs, detail) {}
};

class SpecError : public Error {
 public:
  explicit SpecError(const std::string& detail)
      : Error(ErrorKind::kSpecError, detail) {}
};

// Raised when a simulated success probability exceeds its closed-form
// ceiling. Always indicates a solver or tolerance defect.
class BoundViolation : public Error {
 public:
  explicit BoundViolation(const std::string& detail)
      : Error(ErrorKind::kBoundViolation, detail) {}
};

}  // namespace cqed
