#ifndef MEANLAB_ERRORS_HPP
#define MEANLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace meanlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonHermitianError : Error {
  using Error::Error;
};
struct DimensionMismatchError : Error {
  using Error::Error;
};
struct AmbiguousBoundaryError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct NotPositiveDefiniteError : Error {
  using Error::Error;
};
struct NotStrictlyPositiveError : Error {
  using Error::Error;
};
struct EmptyCollectionError : Error {
  using Error::Error;
};
struct ZeroFunctionError : Error {
  using Error::Error;
};
struct UnknownPointError : Error {
  using Error::Error;
};
struct UnknownExampleError : Error {
  using Error::Error;
};
struct NotAPreserverError : Error {
  using Error::Error;
};
struct DisjointnessViolationError : Error {
  using Error::Error;
};

// Malformed external input (CLI exit code 2). `field` names the offending key.
struct InstanceFormatError : Error {
  std::string field;
  InstanceFormatError(const std::string& field_, const std::string& what_)
      : Error(what_), field(field_) {}
};

}  // namespace meanlab

#endif
