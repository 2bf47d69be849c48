#pragma once

#include <stdexcept>
#include <string>

namespace nonclass {

/// Input outside the mathematical domain of an operation (bad parameter,
/// malformed state description). Maps to CLI exit code 2.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A pure-state measure was asked for a mixed state.
class UnsupportedStateError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Floating-point breakdown: overflow, a non-real result, a recurrence that
/// lost normalization. Maps to CLI exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The Fock cutoff needed to honour a tail bound exceeds the configured limit.
class ResourceError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// R-function requested below the depth of a squeezed component, where it is
/// not a function.
class SingularRegimeError : public NumericError {
 public:
  SingularRegimeError(const std::string& what, double tau, double tau_singular)
      : NumericError(what), tau_(tau), tau_singular_(tau_singular) {}

  double tau() const noexcept { return tau_; }
  double tau_singular() const noexcept { return tau_singular_; }

 private:
  double tau_;
  double tau_singular_;
};

}  // namespace nonclass
