#pragma once

#include <stdexcept>
#include <string>

namespace exact {

/// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown joint or axis name, or a channel index out of range.
class RegistryError : public Error {
 public:
  using Error::Error;
};

/// A program violates a structural constraint (window order, horizon, duplicates).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Infeasible or malformed configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Latent dimensions disagree between a provider, a timeline, or a vector.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file record (JSON-lines, bundle, timeline).
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace exact
