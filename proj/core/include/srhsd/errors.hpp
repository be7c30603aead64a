#pragma once

#include <stdexcept>
#include <string>

namespace srhsd {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// Input data that cannot support the computation, e.g. a constant column.
/// `subject()` names the offending asset, fund or row.
class DegenerateInputError : public DomainError {
 public:
  DegenerateInputError(const std::string& what, std::string subject)
      : DomainError(what), subject_(std::move(subject)) {}
  const std::string& subject() const noexcept { return subject_; }

 private:
  std::string subject_;
};

/// A numerical procedure failed to converge or hit a singular system.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Operation applied to an object in the wrong state (e.g. annualizing twice).
class StateError : public std::logic_error {
 public:
  explicit StateError(const std::string& what) : std::logic_error(what) {}
};

// Throws DomainError with `what` unless `cond` holds.
void require(bool cond, const std::string& what);

}  // namespace srhsd
