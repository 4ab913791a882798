#ifndef ODEINV_ERRORS_HPP
#define ODEINV_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace odeinv {

/// Base class of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for terms outside the polynomial fragment (negative powers,
/// division by non-constants).
class NonPolynomialError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NameCollisionError : public Error {
 public:
  using Error::Error;
};

/// Input that is well-formed but outside the supported fragment, e.g. a
/// quantified formula passed to the normal-form conversion.
class UnsupportedInputError : public Error {
 public:
  using Error::Error;
};

/// A computation exceeded its configured budget (rank cap, loop-chain cap,
/// Buchberger step budget, DNF size limit). Never a verdict.
class ResourceError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Malformed or unsupported certificate and report documents.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace odeinv

#endif  // ODEINV_ERRORS_HPP
