#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace radiant {

/// Bad caller input: nonpositive sizes, malformed parameters.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input outside the mathematical domain of an operation (zero separation,
/// Dicke condition violated, pole of the unregularized dispersion).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operation requested in the wrong physical regime (e.g. shell counting with
/// mu >= k0).
class RegimeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Solver or quadrature failed to reach its accuracy contract.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, std::size_t iterations,
                 double achieved)
      : std::runtime_error(what), iterations_(iterations), achieved_(achieved) {}

  /// Iteration cap (or count) in effect when the failure happened.
  std::size_t iterations() const noexcept { return iterations_; }
  /// Worst residual / achieved error estimate, NaN when unavailable.
  double achieved() const noexcept { return achieved_; }

 private:
  std::size_t iterations_;
  double achieved_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace radiant
