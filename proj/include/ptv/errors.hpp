#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace ptv {

// Base for all library errors. `code` is a short stable identifier
// (e.g. "NotAWeight") that tests and the CLI can dispatch on.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

// Malformed user input: files, flags, branch strings. CLI exit 2.
class ParseError : public Error {
public:
  using Error::Error;
};

// Violated mathematical precondition or standing hypothesis. CLI exit 3.
class ValidationError : public Error {
public:
  using Error::Error;
};

// An exact identity that must hold by theory failed; signals an internal
// inconsistency rather than bad input. CLI exit 4.
class IdentityError : public Error {
public:
  using Error::Error;
};

}  // namespace ptv
