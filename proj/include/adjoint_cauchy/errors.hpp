#pragma once

#include <stdexcept>
#include <string>

namespace acy {

// Base for every error raised by the library. The C API maps the concrete
// subclass onto its status codes.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Precondition or domain-invariant violation in caller-supplied input.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

// Malformed or inconsistent experiment configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

// A numerical procedure failed to deliver (solver stall, step underflow).
class NumericalError : public Error {
public:
  explicit NumericalError(const std::string& what, double residual = 0.0)
      : Error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace acy
