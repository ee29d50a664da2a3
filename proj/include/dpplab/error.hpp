#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dpplab {

/// Base class for every error raised by the library. `exit_code()` is the
/// process status the CLI reports for it.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 2; }
};

/// Shapes that do not fit (non-square determinant, mismatched lengths).
class DimensionError : public Error {
 public:
  using Error::Error;
};

class SymmetryError : public Error {
 public:
  using Error::Error;
};

/// Linear dependence found while orthonormalizing; `index()` is the first
/// input vector that fell inside the span of its predecessors.
class DependenceError : public Error {
 public:
  DependenceError(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Input is well formed but outside the mathematical domain of the
/// operation (e.g. an inadmissible kernel).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration would exceed its cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

class DegeneracyError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class SupportError : public Error {
 public:
  using Error::Error;
};

/// The projection sampler kept hitting numerically degenerate steps.
class ResampleError : public Error {
 public:
  using Error::Error;
};

}  // namespace dpplab
