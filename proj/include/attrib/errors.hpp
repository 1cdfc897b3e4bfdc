#pragma once

#include <stdexcept>
#include <string>

namespace attrib {

/// Base of every error raised by the core library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed something malformed: a symbol outside the alphabet, a
/// negative length, an unknown preset name.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A document or file could not be read or decoded.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Input was well-formed but violates a semantic requirement (indistinct
/// languages, unnormalized pmf, undefined imputation mean, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace attrib
