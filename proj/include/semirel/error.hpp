#pragma once

#include <stdexcept>
#include <string>

namespace semirel {

// Base of every error raised by the library. Callers that only need to know
// "the computation refused" catch this; the CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A closed form's square root turned imaginary: (l+1/2)^2 <= alpha^2.
class SupercriticalCoupling : public Error {
 public:
  using Error::Error;
};

// alpha >= 2/pi: the square-root Coulomb Hamiltonian is unbounded below.
class SupercriticalSalpeter : public Error {
 public:
  using Error::Error;
};

class IllConditioned : public Error {
 public:
  using Error::Error;
};

class IllConditionedBasis : public Error {
 public:
  using Error::Error;
};

class DivergentMoment : public Error {
 public:
  using Error::Error;
};

class ConfigMismatch : public Error {
 public:
  using Error::Error;
};

class UnsupportedOrder : public Error {
 public:
  using Error::Error;
};

class ChannelMismatch : public Error {
 public:
  using Error::Error;
};

class SingularSystem : public Error {
 public:
  using Error::Error;
};

class NonConverged : public Error {
 public:
  using Error::Error;
};

class QuadratureNotConverged : public NonConverged {
 public:
  using NonConverged::NonConverged;
};

class ComplexEigenvalues : public Error {
 public:
  using Error::Error;
};

class FieldTooRough : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class InsufficientPoints : public Error {
 public:
  using Error::Error;
};

}  // namespace semirel
