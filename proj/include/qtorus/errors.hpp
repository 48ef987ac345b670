#pragma once

#include <stdexcept>
#include <string>

namespace qtorus {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid input data: malformed config, bad commutation matrix, bad field spec.
struct ConfigError : Error {
  using Error::Error;
};

// Valid data, impossible request: inverting zero, coordinates of a non-central
// monomial, an element outside the representable class.
struct DomainError : Error {
  using Error::Error;
};

// Brute-force enumeration would exceed the configured budget.
struct BudgetError : Error {
  using Error::Error;
};

// A cross-check the theory guarantees has failed; always a bug.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace qtorus
