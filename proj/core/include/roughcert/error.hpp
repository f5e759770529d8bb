#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace roughcert {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed to converge or produced an unusable value.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A value-type invariant does not hold (overlapping arcs, bad geometry).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Construction geometry is internally inconsistent (atoms not congruent).
class GeometryError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A parameter combination an estimate cannot be evaluated at.
class ParameterError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string key, const std::string& what)
      : Error("config key '" + key + "': " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace roughcert
