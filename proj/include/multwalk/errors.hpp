#pragma once

#include <stdexcept>

namespace multwalk {

// Argument outside an operation's domain (n == 0, composite where a prime is
// required, q >= p where q < p is required, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Request exceeds a configured size guard (table limits, sieve cap, divisor
// count cap).  Guards exist so a typo'd limit fails fast instead of swapping.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric routine could not certify the requested tolerance within its
// iteration budget.
class ToleranceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace multwalk
