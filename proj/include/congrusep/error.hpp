#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace congrusep {

// Error taxonomy. Each family maps to one CLI exit code:
//   InputError        -> 2  (malformed or unsupported input)
//   PreconditionError -> 3  (mathematical precondition violated)
//   ResourceError     -> 4  (budget exceeded / search exhausted)
// Verification failures are reported as values, not exceptions.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public InputError {
 public:
  using InputError::InputError;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public PreconditionError {
 public:
  SingularMatrixError() : PreconditionError("singular matrix") {}
  explicit SingularMatrixError(const std::string& what) : PreconditionError(what) {}
};

/// Reduction of a rational matrix failed because an entry denominator shares a
/// factor with the modulus. `denominator_factor` is gcd(denominator, m) > 1.
class DenominatorError : public PreconditionError {
 public:
  DenominatorError(const std::string& what, std::uint64_t denominator_factor)
      : PreconditionError(what), denominator_factor_(denominator_factor) {}
  std::uint64_t denominator_factor() const noexcept { return denominator_factor_; }

 private:
  std::uint64_t denominator_factor_;
};

class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An enumeration exceeded its element budget. `partial_size` is how many
/// elements had been found when the budget ran out.
class BudgetExceeded : public ResourceError {
 public:
  BudgetExceeded(const std::string& what, std::size_t partial_size)
      : ResourceError(what), partial_size_(partial_size) {}
  std::size_t partial_size() const noexcept { return partial_size_; }

 private:
  std::size_t partial_size_;
};

}  // namespace congrusep
