#pragma once

#include <stdexcept>
#include <string>

namespace conedecay {

/// Base type for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point, radius or parameter outside the admissible domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid construction parameters (bad variant, non positive definite Q, m <= 0, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Time stepping blew up (NaN, CFL violation at run time, energy growth).
class InstabilityError : public Error {
 public:
  using Error::Error;
};

/// The series does not carry enough decay to decide; the run should be extended.
class InsufficientData : public Error {
 public:
  using Error::Error;
};

/// Config document failed validation. `field` is the dotted key path, `line` 1-based (0 if unknown).
class ConfigError : public Error {
 public:
  ConfigError(std::string field, int line, const std::string& what)
      : Error(format(field, line, what)), field_(std::move(field)), line_(line) {}

  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& field, int line, const std::string& what) {
    std::string out = "config";
    if (!field.empty()) out += " field '" + field + "'";
    if (line > 0) out += " (line " + std::to_string(line) + ")";
    return out + ": " + what;
  }

  std::string field_;
  int line_;
};

}  // namespace conedecay
