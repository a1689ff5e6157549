#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rankspan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shape, field or index mismatch; a caller bug rather than a mathematical event.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed the configured element budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string what, double required, std::uint64_t budget)
      : Error(std::move(what)), required_(required), budget_(budget) {}

  /// Number of items the enumeration needs (may exceed 2^64, hence double).
  double required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  double required_;
  std::uint64_t budget_;
};

/// No index i with R_i(V) = {0}. Either the input is not zero-spectrum or
/// the combinatorial proposition is refuted.
class NoZeroRowIndex : public Error {
 public:
  using Error::Error;
};

/// Exhaustive search for an object that must exist came up empty.
class NotFound : public Error {
 public:
  using Error::Error;
};

}  // namespace rankspan
