#pragma once

#include <stdexcept>
#include <string>

namespace gcea {

/// Base of every error raised by the library. The CLI maps each kind to an
/// exit code (see `exit_code`).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameter combination (k >= n, s not dividing n, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Length or index mismatch between collaborating objects.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Request would exceed a resource cap (table memory, enumeration size).
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Malformed persisted data. The message names the offending field.
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Run configuration that cannot execute (budget too small, P = 1, ...).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

namespace exit_codes {
inline constexpr int ok = 0;
inline constexpr int parameter = 2;
inline constexpr int resource = 3;
inline constexpr int partial_failure = 4;
}  // namespace exit_codes

inline int exit_code(const Error& e) noexcept {
  if (dynamic_cast<const ResourceError*>(&e) != nullptr) return exit_codes::resource;
  return exit_codes::parameter;
}

}  // namespace gcea
