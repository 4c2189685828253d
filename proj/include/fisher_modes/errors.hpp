#pragma once

#include <stdexcept>
#include <string>

namespace fisher_modes {

// Root of every error the library throws. The CLI maps subclasses onto exit
// codes, so new error kinds should derive from one of the two branches below.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid input: the caller asked for something outside the mathematical
// domain of the operation. CLI exit code 2.
class DomainError : public Error {
 public:
  using Error::Error;
};

// r <= r_s for a Schwarzschild evaluation.
class HorizonError : public DomainError {
 public:
  using DomainError::DomainError;
};

// theta in {0, pi} or r = 0 where a coordinate factor diverges.
class SingularPointError : public DomainError {
 public:
  using DomainError::DomainError;
};

class UnsupportedIndexError : public DomainError {
 public:
  using DomainError::DomainError;
};

// alpha^2 + eta^2 <= 0 for a free mode (no oscillatory radial solution).
class EvanescentModeError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A mode handed to the Fisher machinery is not normalized on the domain.
class NormalizationError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ShapeError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Numerical failure on valid input. CLI exit code 3.
class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public NumericalError {
 public:
  ConvergenceError(const std::string& what, double previous, double last)
      : NumericalError(what), previous_(previous), last_(last) {}

  double previous() const noexcept { return previous_; }
  double last() const noexcept { return last_; }

 private:
  double previous_;
  double last_;
};

class NonFiniteError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Step-size underflow while integrating away from a start point close to the
// horizon.
class NearHorizonError : public NumericalError {
 public:
  NearHorizonError(const std::string& what, double r) : NumericalError(what), r_(r) {}
  double r() const noexcept { return r_; }

 private:
  double r_;
};

// Solution state became non-finite (or the step size underflowed away from
// the horizon). Carries the last radius at which the state was good.
class BlowUpError : public NumericalError {
 public:
  BlowUpError(const std::string& what, double last_good_r)
      : NumericalError(what), last_good_r_(last_good_r) {}
  double last_good_r() const noexcept { return last_good_r_; }

 private:
  double last_good_r_;
};

}  // namespace fisher_modes
