#pragma once

#include <stdexcept>
#include <string>

namespace lindloc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class NotHermitianError : public Error {
 public:
  NotHermitianError(const std::string& what, double asymmetry)
      : Error(what), asymmetry_(asymmetry) {}
  double asymmetry() const noexcept { return asymmetry_; }

 private:
  double asymmetry_;
};

class PositivityError : public Error {
 public:
  PositivityError(const std::string& what, double min_eigenvalue)
      : Error(what), min_eigenvalue_(min_eigenvalue) {}
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

/// Spectrum cannot be grouped into well separated levels.
class AmbiguousSpectrumError : public Error {
 public:
  using Error::Error;
};

/// Sparse spectrum condition fails against the coupling strength.
class SpectrumTooDenseError : public Error {
 public:
  using Error::Error;
};

class NonUniqueSteadyStateError : public Error {
 public:
  NonUniqueSteadyStateError(const std::string& what, int null_dim)
      : Error(what), null_dim_(null_dim) {}
  int null_dim() const noexcept { return null_dim_; }

 private:
  int null_dim_;
};

class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double time)
      : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace lindloc
