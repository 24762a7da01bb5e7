#pragma once

#include <stdexcept>
#include <string>

namespace vacspec {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (s <= 1, Re q <= 0,
/// tachyonic ESU modes, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed request: unsorted grids, empty windows, bad configuration.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Unregulated integral over an unbounded range.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Bernoulli number beyond the tabulated order.
class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

/// A callback produced NaN or Inf.
class NonFiniteError : public Error {
 public:
  using Error::Error;
};

/// Internal invariant violated; signals a bug rather than bad input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace vacspec
