#pragma once

#include <stdexcept>
#include <string>

namespace thhkit {

/// Base of every error raised by the library. `code()` is a stable
/// identifier such as "NonConfluentRelations" that reports and tests key on.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Malformed input text. Carries a 1-based line number (0 if unknown).
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& message)
      : Error("ParseError", "line " + std::to_string(line) + ": " + message), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// A mathematical precondition failed (the input parsed but the requested
/// computation is not defined on it).
class MathError : public Error {
 public:
  using Error::Error;
};

}  // namespace thhkit
