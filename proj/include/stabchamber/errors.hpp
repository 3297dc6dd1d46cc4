#pragma once

#include <stdexcept>
#include <string>

namespace stabchamber {

/// Base class for all engine errors. Every error is a domain failure
/// except ParseError, which signals malformed input text.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

class ValidityError : public Error {
 public:
  using Error::Error;
};

class OrthogonalityError : public Error {
 public:
  using Error::Error;
};

class SupportError : public Error {
 public:
  using Error::Error;
};

class PivotError : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class PositivityError : public Error {
 public:
  using Error::Error;
};

class UnsupportedEnumerationError : public Error {
 public:
  using Error::Error;
};

class DegenerateBasisError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace stabchamber
