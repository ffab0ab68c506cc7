#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ere {

enum class ErrorKind {
  Config,
  Dimension,
  Capacity,
  Convergence,
  Domain,
  Usage,
  Unsupported,
  InvalidState,
  NoSignal,
  Indeterminate,
  Io,
};

std::string_view error_kind_name(ErrorKind kind);

/// Base of every error thrown by the library. The kind drives the CLI exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(ErrorKind::Config, w) {}
};
struct DimensionError : Error {
  explicit DimensionError(const std::string& w) : Error(ErrorKind::Dimension, w) {}
};
struct CapacityError : Error {
  explicit CapacityError(const std::string& w) : Error(ErrorKind::Capacity, w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorKind::Domain, w) {}
};
struct UsageError : Error {
  explicit UsageError(const std::string& w) : Error(ErrorKind::Usage, w) {}
};
struct UnsupportedError : Error {
  explicit UnsupportedError(const std::string& w) : Error(ErrorKind::Unsupported, w) {}
};
struct InvalidStateError : Error {
  explicit InvalidStateError(const std::string& w) : Error(ErrorKind::InvalidState, w) {}
};
struct NoSignalError : Error {
  explicit NoSignalError(const std::string& w) : Error(ErrorKind::NoSignal, w) {}
};
struct IndeterminateError : Error {
  explicit IndeterminateError(const std::string& w) : Error(ErrorKind::Indeterminate, w) {}
};
struct IoError : Error {
  explicit IoError(const std::string& w) : Error(ErrorKind::Io, w) {}
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& w, double best_residual)
      : Error(ErrorKind::Convergence, w), best_residual_(best_residual) {}
  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace ere
