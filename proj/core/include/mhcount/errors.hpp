#pragma once

#include <stdexcept>
#include <string>

namespace mhcount {

// Base class for all library errors so callers can catch in one place.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No prime in [Q, 2Q] satisfies the requested congruence condition.
struct EmptySelection : Error {
  using Error::Error;
};

// Fewer primes available than the requested number of factors.
struct InsufficientPrimes : Error {
  using Error::Error;
};

struct NotInvertible : Error {
  using Error::Error;
};

// Modulus or table size beyond the supported range.
struct ModulusTooLarge : Error {
  using Error::Error;
};

// Polynomial degree outside what a comparator handles.
struct DegreeUnsupported : Error {
  using Error::Error;
};

struct BadIndex : Error {
  using Error::Error;
};

// Inputs for which the requested bound statement is vacuous or undefined.
struct DegenerateInput : Error {
  using Error::Error;
};

// gcd condition between exponents and character order violated.
struct OrderConditionViolated : Error {
  using Error::Error;
};

struct NotAFactor : Error {
  using Error::Error;
};

// Truncated-logarithm construction needs p > r.
struct PrecisionUnavailable : Error {
  using Error::Error;
};

struct BadRange : Error {
  using Error::Error;
};

// Character-identity reconstruction too far from an integer to round safely.
struct ResidualTooLarge : Error {
  using Error::Error;
};

struct BudgetExceeded : Error {
  using Error::Error;
};

}  // namespace mhcount
