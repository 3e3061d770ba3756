#pragma once

#include <stdexcept>
#include <string>

namespace curvlie {

// Base class for everything this library throws on invalid input or
// out-of-contract state. Search/verdict routines never throw for
// mathematical outcomes; those are encoded in result structs.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AntisymmetryViolation : Error {
  using Error::Error;
};
struct JacobiViolation : Error {
  using Error::Error;
};
struct MetricNotAdInvariant : Error {
  using Error::Error;
};
struct MetricNotPositiveDefinite : Error {
  using Error::Error;
};
struct NotSymmetric : Error {
  using Error::Error;
};
struct NotPositiveDefinite : Error {
  using Error::Error;
};
struct DomainTooSmall : Error {
  using Error::Error;
};
struct OutOfDomain : Error {
  using Error::Error;
};
struct SubalgebraNotAbelian : Error {
  using Error::Error;
};
struct NotASubalgebra : Error {
  using Error::Error;
};
struct FactorsMissing : Error {
  using Error::Error;
};
struct PlaneNotInvariant : Error {
  using Error::Error;
};
struct PlaneNotSplit : Error {
  using Error::Error;
};
struct NonPositiveLambda : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};

}  // namespace curvlie
