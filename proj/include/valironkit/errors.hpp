#pragma once

#include <stdexcept>
#include <string>

#include "valironkit/types.hpp"

namespace valironkit {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A point or result that is outside the domain it is supposed to live in.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Differentiation on the branch cut of sqrt or log.
class BranchError : public Error {
 public:
  using Error::Error;
};

/// Malformed descriptor or bad parameters.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical search that neither succeeded nor ruled out its target.
class Inconclusive : public Error {
 public:
  using Error::Error;
};

class NotSelfMapError : public Error {
 public:
  using Error::Error;
};

class SingularSystemError : public Error {
 public:
  using Error::Error;
};

/// A sequence limit whose acceleration certificate is worse than requested.
/// Carries the last two values that were compared.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, cplx previous, cplx last)
      : Error(what), previous_(previous), last_(last) {}

  cplx previous() const { return previous_; }
  cplx last() const { return last_; }

 private:
  cplx previous_;
  cplx last_;
};

}  // namespace valironkit
