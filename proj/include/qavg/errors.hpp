#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qavg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input supplied by a caller (bad file, bad matrix, bad flag value).
class InputError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

class ParseError : public InputError {
 public:
  using InputError::InputError;
};

/// An operator declared Hermitian violates A = A^dagger beyond tolerance.
/// Carries the first offending entry (row, col).
class HermiticityError : public InputError {
 public:
  HermiticityError(const std::string& what, std::size_t row, std::size_t col)
      : InputError(what), row_(row), col_(col) {}

  std::size_t row() const noexcept { return row_; }
  std::size_t col() const noexcept { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

/// A post-construction invariant failed. This signals a bug in the engine,
/// not bad input.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace qavg
