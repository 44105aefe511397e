#pragma once

#include <stdexcept>
#include <string>

namespace agecode {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition (empty bucket, mixed
/// generations, p < 1, ...).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the analytic domain of a closed form.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The offered load cannot be served: rho >= 1 - 1e-9, or an arrival rate
/// that implies it.
class StabilityError : public Error {
 public:
  using Error::Error;
};

/// No feasible allocation/rate exists (e.g. every path has rate zero).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// A decoder was asked to solve before reaching full rank.
class NotReadyError : public Error {
 public:
  using Error::Error;
};

/// Configuration file or parameter validation failure.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure while writing results.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace agecode
