#pragma once

#include <stdexcept>
#include <string>

namespace rvoseval {

// Base for every error raised by the library. Callers that only care about
// "data was bad" can catch this; the subclasses name the contract that broke.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MalformedRle : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class SequenceMismatch : public Error {
 public:
  using Error::Error;
};

class EmptyVideo : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class SchemaViolation : public Error {
 public:
  using Error::Error;
};

class MissingPrediction : public Error {
 public:
  using Error::Error;
};

class MissingBoxes : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace rvoseval
