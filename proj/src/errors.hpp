#pragma once

#include <stdexcept>
#include <string>

namespace capkc {

// Malformed or semantically invalid input (instance, solution, witness files,
// generator arguments).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
  InputError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

// A precondition of a rounding primitive or a proven stage invariant did not
// hold. Always a bug or a caller error, never an expected outcome.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

// The exact oracle refuses instances whose enumeration would be too large.
class OracleRefused : public std::runtime_error {
 public:
  explicit OracleRefused(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace capkc
