#pragma once

#include <stdexcept>
#include <string>

namespace logbm {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input does not span the required dimension.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class ZeroVector : public Error {
 public:
  using Error::Error;
};

class Unbounded : public Error {
 public:
  using Error::Error;
};

class RetryExhausted : public Error {
 public:
  using Error::Error;
};

/// Malformed external input; `field` names the offending location.
class ParseError : public Error {
 public:
  ParseError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// A proved statement failed or two computation routes disagreed. This is
/// always an implementation bug, never a finding.
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace logbm
