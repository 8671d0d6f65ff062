#pragma once

#include <stdexcept>
#include <string>

namespace natdual {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SignatureMismatch : public Error {
 public:
  using Error::Error;
};

// An exponential enumeration would exceed its configured bound.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An alter-ego component is not algebraic over M.
class NotAlgebraic : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

// A neighbourhood contains no algebra point up to the explored depth.
class EmptyAtDepth : public Error {
 public:
  EmptyAtDepth(const std::string& what, int depth) : Error(what), depth_(depth) {}
  int depth() const noexcept { return depth_; }

 private:
  int depth_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace natdual
