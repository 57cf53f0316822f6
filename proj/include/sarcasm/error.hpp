#pragma once

#include <stdexcept>
#include <string>

namespace sarcasm {

// All library failures derive from Error so the CLI can map them to a
// nonzero exit status in one place.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed input text: bad JSON, wrong arity, unparsable number.
class FormatError : public Error {
 public:
  using Error::Error;
};

// Well-formed input that violates a contract: unknown label, dimension
// mismatch, single-class training data.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace sarcasm
