#pragma once

#include <stdexcept>
#include <string>

namespace srt {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter is outside its valid domain (non-positive distance, variance, ...).
class InvalidParameter : public Error {
 public:
  using Error::Error;
};

// The interference-canceled scheme cannot be configured: the average power of
// the cancelation signal would exceed the macro budget for some antenna.
class SchemeInfeasible : public Error {
 public:
  using Error::Error;
};

// Subset enumeration requested beyond the supported antenna count.
class ComplexityLimit : public Error {
 public:
  using Error::Error;
};

// A closed form was asked for a topology that violates its modelling
// assumption (the i.i.d. antenna statistics).
class ModelAssumption : public Error {
 public:
  using Error::Error;
};

// Special-function argument outside the domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed or inconsistent configuration file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace srt
