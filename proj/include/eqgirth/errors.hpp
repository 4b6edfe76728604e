#pragma once

#include <stdexcept>
#include <string>

namespace eqgirth {

// Base for everything the library throws on bad input or degenerate geometry.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Invalid run parameters (grid sizes, resolutions, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Sampled curve is not a simple closed curve.
class TopologyError : public Error {
 public:
  using Error::Error;
};

// Curve passes too close to a pole of the quadrature chart.
class ChartError : public Error {
 public:
  using Error::Error;
};

// Non-transversal intersection of two graphs.
class DegeneracyError : public Error {
 public:
  DegeneracyError(const std::string& what, double parameter)
      : Error(what), parameter_(parameter) {}
  double parameter() const noexcept { return parameter_; }

 private:
  double parameter_;
};

// Point too close to the singular point of a vector field.
class SingularityError : public Error {
 public:
  using Error::Error;
};

// Sampling too coarse to track a continuous quantity.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

}  // namespace eqgirth
