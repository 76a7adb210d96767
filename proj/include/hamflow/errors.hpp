#pragma once

#include <stdexcept>
#include <string>

namespace hamflow {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (branch points,
/// series convergence radius, λ = INFINITE where a finite λ is required).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A bracketed root search found no sign change or failed to converge.
class NoRootError : public Error {
 public:
  using Error::Error;
};

/// More than one sign change inside the search bracket.
class AmbiguousRootError : public Error {
 public:
  using Error::Error;
};

/// Generating function with vanishing partials: it defines no transformation.
class DegenerateSpecError : public Error {
 public:
  using Error::Error;
};

/// An integration step produced a non-finite state.
class NumericalBlowUp : public Error {
 public:
  NumericalBlowUp(const std::string& what, double last_good_time)
      : Error(what), last_good_time_(last_good_time) {}

  double last_good_time() const noexcept { return last_good_time_; }

 private:
  double last_good_time_;
};

}  // namespace hamflow
