#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qcsim {

/// Base of every error raised by the library. The CLI maps subclasses to
/// process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad gate parameters, generator specs, or other caller arguments.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Invalid run configuration (worker/slice counts and friends).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Requested state does not fit the configured budget.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, std::uint64_t required_bytes)
      : Error(what), required_bytes_(required_bytes) {}

  std::uint64_t required_bytes() const noexcept { return required_bytes_; }

 private:
  std::uint64_t required_bytes_;
};

/// QASM source could not be parsed. line() is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Operation that a backend does not handle (e.g. mid-circuit Measure).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Inconsistent tensor network or contraction plan.
class StructuralError : public Error {
 public:
  using Error::Error;
};

/// A metric whose formula is undefined for the given circuit.
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcsim
