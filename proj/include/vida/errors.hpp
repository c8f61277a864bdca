// SPDX-License-Identifier: Apache-2.0
#ifndef VIDA_ERRORS_HPP
#define VIDA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vida {

// Base class for every error the library throws on purpose.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A domain value violates a documented invariant. `field` names the
// offending member so callers can report it without string matching.
class ValidationError : public Error {
public:
  ValidationError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

// Malformed input text (CSV, config, WKT). Carries the 1-based location
// when known; 0 means "not applicable".
class ParseError : public Error {
public:
  ParseError(const std::string& message, std::size_t row = 0,
             std::size_t column = 0)
      : Error(message), row_(row), column_(column) {}
  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t row_;
  std::size_t column_;
};

// File could not be opened, read or written.
class IoError : public Error {
public:
  using Error::Error;
};

} // namespace vida

#endif
