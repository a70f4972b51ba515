#pragma once

#include <stdexcept>
#include <string>

namespace fluxcat {

/// Precondition violated by the caller (L <= 0, |delta| >= pi/2, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A numerical routine failed to reach its tolerance.
/// `achieved` is the best accuracy (or last residual) obtained.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double achieved)
      : std::runtime_error(what), achieved_(achieved) {}

  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

/// A checked inequality or structural property did not hold.
class PropertyFailure : public std::runtime_error {
 public:
  explicit PropertyFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fluxcat
