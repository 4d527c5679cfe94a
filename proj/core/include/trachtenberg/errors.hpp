#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace trachtenberg {

// Text that is not a nonnegative decimal number.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Argument outside an operation's mathematical domain (bad digit, unsupported
// multiplier, role/digit combination that cannot occur).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Broken internal invariant. Never expected; raised instead of emitting a
// wrong digit.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Answer addressed to a challenge that is not the open one.
class ChallengeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document or answer. `field` names the offending member
// when one can be identified.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& message, std::string field = {})
      : std::invalid_argument(message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class PersistenceError : public std::runtime_error {
 public:
  PersistenceError(const std::string& message, std::size_t line)
      : std::runtime_error(line == 0 ? message
                                     : "line " + std::to_string(line) + ": " + message),
        line_(line) {}

  // 1-based line of the session log that failed, 0 when not line specific.
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace trachtenberg
