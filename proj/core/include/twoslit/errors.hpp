#pragma once

#include <stdexcept>
#include <string>

namespace twoslit {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// |psi| fell below the node threshold where the guidance velocity is singular.
class NodeProximityError : public Error {
 public:
  using Error::Error;
};

/// A conditioned sampler could not reach its acceptance floor.
class ConditioningStarvedError : public Error {
 public:
  using Error::Error;
};

/// A scenario configuration violates one of its regime requirements.
class ConstraintViolatedError : public Error {
 public:
  using Error::Error;
};

/// Geometry for which a derived quantity is undefined (e.g. zero slit offset).
class DegenerateGeometryError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameter value outside any configuration document.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// Configuration document error carrying the offending field path.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& reason)
      : Error(field + ": " + reason), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace twoslit
