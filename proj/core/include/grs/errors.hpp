#pragma once

#include <stdexcept>
#include <string>

namespace grs {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an elementary function or a meridian.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Family parameters violate the constraints of their classification case.
class ParamError : public Error {
 public:
  using Error::Error;
};

/// The unit-speed/linear system of a constrained meridian has no real root.
class NoRealRootError : public Error {
 public:
  using Error::Error;
};

/// The algebraic constraint residual of an integrated meridian grew past 10*tol.
class ConstraintDriftError : public Error {
 public:
  using Error::Error;
};

/// Point where E <= 0 or G >= 0, i.e. the surface is not Lorentz there.
class InadmissiblePointError : public Error {
 public:
  using Error::Error;
};

/// Query outside the knot range of a trajectory.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Finite-difference stencil leaves the admissible domain.
class StepError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ProjectionError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace grs
