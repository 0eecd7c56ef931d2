#pragma once

#include <stdexcept>
#include <string>

namespace solitonlab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Point outside the validity domain of a chart or profile.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Metric not positive definite at the evaluation point.
class DegenerateMetricError : public Error {
 public:
  DegenerateMetricError(const std::string& what, double smallest_eigenvalue)
      : Error(what), smallest_eigenvalue_(smallest_eigenvalue) {}
  double smallest_eigenvalue() const { return smallest_eigenvalue_; }

 private:
  double smallest_eigenvalue_;
};

/// A computation needs more derivatives than the field provides.
class DerivativeOrderError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Radius or parameter outside the range a profile or chart supports.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// ODE integration or series matching failed.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace solitonlab
