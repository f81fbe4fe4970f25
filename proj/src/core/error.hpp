#pragma once

#include <stdexcept>
#include <string>

namespace ipm1d {

enum class ErrorKind { config, parameter, domain, numeric, precondition, io };

/// Base exception for all library errors. The kind maps onto the C API
/// status codes and the CLI exit-status contract.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(ErrorKind::config, what) {}
};
struct ParameterError : Error {
  explicit ParameterError(const std::string& what) : Error(ErrorKind::parameter, what) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorKind::domain, what) {}
};
struct NumericError : Error {
  explicit NumericError(const std::string& what) : Error(ErrorKind::numeric, what) {}
};
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& what) : Error(ErrorKind::precondition, what) {}
};
struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace ipm1d
