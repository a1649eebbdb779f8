#pragma once

#include <stdexcept>
#include <string>

namespace minkhelix {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical evaluation failures.
class NumericsError : public Error {
 public:
  using Error::Error;
};
class DomainError : public NumericsError {
 public:
  using NumericsError::NumericsError;
};
class OrderError : public NumericsError {
 public:
  using NumericsError::NumericsError;
};
class InsufficientSamples : public NumericsError {
 public:
  using NumericsError::NumericsError;
};
class NonConvergence : public NumericsError {
 public:
  using NumericsError::NumericsError;
};

// A curve or field does not meet the geometric precondition of an operation.
class GeometryError : public Error {
 public:
  using Error::Error;
};
class NotUnitSpeed : public GeometryError {
 public:
  using GeometryError::GeometryError;
};
class DegenerateNormal : public GeometryError {
 public:
  using GeometryError::GeometryError;
};
class NotNull : public GeometryError {
 public:
  using GeometryError::GeometryError;
};
class DegenerateAcceleration : public GeometryError {
 public:
  using GeometryError::GeometryError;
};
class LeftHandedNullFrame : public GeometryError {
 public:
  using GeometryError::GeometryError;
};
class NullCurveError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};
class MixedCausality : public GeometryError {
 public:
  using GeometryError::GeometryError;
};
class LightlikeDarboux : public GeometryError {
 public:
  using GeometryError::GeometryError;
};
class PreconditionError : public GeometryError {
 public:
  using GeometryError::GeometryError;
};

// Configuration and expression text problems.
class ConfigError : public Error {
 public:
  using Error::Error;
};
class ParseError : public ConfigError {
 public:
  ParseError(const std::string& what, int line, int column)
      : ConfigError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};
class UnknownKey : public ConfigError {
 public:
  using ConfigError::ConfigError;
};
class BadExpression : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace minkhelix
