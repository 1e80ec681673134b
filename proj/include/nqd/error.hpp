#pragma once

#include <stdexcept>
#include <string>

namespace nqd {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the documented domain (bad coordinate, bad index, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Board or model too large for the in-memory representation.
class SizeError : public Error {
 public:
  using Error::Error;
};

// A construction or certificate failed its validity check.
class InvalidPlacement : public Error {
 public:
  using Error::Error;
};

// Malformed external input (JSON, LP text, bound tables).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace nqd
