#pragma once

#include <stdexcept>
#include <string>

namespace ccnacct {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A value violates its type invariant. Raised at construction, so an
// invalid message can never reach the encoder.
class FieldError : public Error {
 public:
  using Error::Error;
};

class OversizeField : public FieldError {
 public:
  using FieldError::FieldError;
};

class MalformedMessage : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class UnknownKey : public Error {
 public:
  using Error::Error;
};

class DecryptFailure : public Error {
 public:
  using Error::Error;
};

class MissingCrsd : public Error {
 public:
  using Error::Error;
};

}  // namespace ccnacct
