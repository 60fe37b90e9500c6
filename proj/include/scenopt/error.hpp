#pragma once

#include <stdexcept>
#include <string>

namespace scenopt {

// Exception hierarchy. The CLI maps these onto distinct exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain (non-positive σ, empty sample set, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Requested index beyond the materialized horizon of a drift family.
class HorizonError : public Error {
 public:
  using Error::Error;
};

/// A combinatorial guard was exceeded (subset enumeration, exhaustive search).
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Numerical procedure did not converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Internal invariant broken, e.g. a solver returned different answers on identical input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace scenopt
