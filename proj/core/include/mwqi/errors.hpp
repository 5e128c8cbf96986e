#pragma once

#include <stdexcept>
#include <string>

namespace mwqi {

/// Input outside an operation's mathematical domain (negative temperature,
/// non-finite frequency, entropy argument below 1/2, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The converter is evaluated at (or numerically next to) a pole of its
/// input-output map, i.e. on the instability boundary.
class SingularOperatingPoint : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An internal invariant failed (unphysical covariance, negative variance).
/// Seeing one of these means a coefficient or moment formula is wrong.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  /// 1-based line of the offending config entry, 0 when not tied to a line.
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace mwqi
