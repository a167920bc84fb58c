#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace subbundle {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class MixedFields : public Error {
 public:
  MixedFields() : Error("operands belong to different coefficient fields") {}
};

class ContextMismatch : public Error {
 public:
  using Error::Error;
  ContextMismatch() : Error("operands live in different variable contexts") {}
};

class UnknownVariable : public Error {
 public:
  explicit UnknownVariable(const std::string& name) : Error("unknown variable '" + name + "'") {}
};

class NoBlockSplit : public Error {
 public:
  NoBlockSplit() : Error("variable context has no base/fiber split") {}
};

class BadMinorSize : public Error {
 public:
  using Error::Error;
};

class ZeroDivisorPolynomial : public Error {
 public:
  ZeroDivisorPolynomial() : Error("cannot saturate by the zero polynomial") {}
};

/// A configured ceiling (pairs, basis size, subset enumeration) was exceeded.
class ResourceLimit : public Error {
 public:
  using Error::Error;
};

class PointNotOnBase : public Error {
 public:
  using Error::Error;
};

class ExponentOverflow : public Error {
 public:
  ExponentOverflow() : Error("monomial exponent overflow") {}
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

}  // namespace subbundle
