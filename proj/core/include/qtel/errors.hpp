#pragma once

#include <stdexcept>
#include <string>

namespace qtel {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite or structurally invalid matrix input.
class InvalidMatrix : public Error {
 public:
  using Error::Error;
};

/// Input expected to be a proper rotation (orthogonal, det = +1) is not.
class NotARotation : public Error {
 public:
  using Error::Error;
};

/// A density-matrix invariant (Hermiticity, unit trace, positivity) failed.
class InvalidState : public Error {
 public:
  InvalidState(const std::string& what, double min_eigenvalue)
      : Error(what), min_eigenvalue_(min_eigenvalue) {}
  explicit InvalidState(const std::string& what) : Error(what) {}

  /// Smallest eigenvalue seen during validation, when available.
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_ = 0.0;
};

/// A Bloch triple (R, S, T) does not describe a physical state.
class NotAState : public Error {
 public:
  NotAState(const std::string& what, double min_eigenvalue)
      : Error(what), min_eigenvalue_(min_eigenvalue) {}
  explicit NotAState(const std::string& what) : Error(what) {}

  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_ = 0.0;
};

/// Scalar argument outside its documented domain.
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// Operation requires a state whose correlation matrix is diagonal.
class NotCanonical : public Error {
 public:
  using Error::Error;
};

/// Two algebraic routes that must agree disagreed beyond tolerance.
class DerivationMismatch : public Error {
 public:
  using Error::Error;
};

/// State-file syntax or schema error; the message carries the location.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qtel
