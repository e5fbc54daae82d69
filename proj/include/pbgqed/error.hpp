#pragma once

#include <stdexcept>
#include <string>

namespace pbgqed {

/// Invalid or inconsistent scenario configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what, std::string key = {}, int line = 0)
      : std::runtime_error(what), key_(std::move(key)), line_(line) {}

  /// Offending key, empty when the error is not tied to one.
  const std::string& key() const noexcept { return key_; }
  /// 1-based line number in the config text, 0 when unknown.
  int line() const noexcept { return line_; }

 private:
  std::string key_;
  int line_;
};

/// A computed quantity broke an invariant it must satisfy (norm, bounds,
/// truncation). Signals an upstream bug or an undersized basis (exit code 3).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fock cutoff too small for the requested coherent state.
class TruncationError : public NumericalError {
 public:
  TruncationError(const std::string& what, double tail_mass)
      : NumericalError(what), tail_mass_(tail_mass) {}
  double tail_mass() const noexcept { return tail_mass_; }

 private:
  double tail_mass_;
};

/// File could not be read or written (exit code 4).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pbgqed
