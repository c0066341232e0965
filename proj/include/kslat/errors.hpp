#pragma once

#include <stdexcept>
#include <string>

namespace kslat {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
  using Error::Error;
};
struct NotSelfAdjoint : Error {
  using Error::Error;
};
struct NotProjection : Error {
  using Error::Error;
};
struct NumericalDegeneracy : Error {
  using Error::Error;
};
struct DomainGap : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct ZeroVector : Error {
  using Error::Error;
};
struct MissingValue : Error {
  using Error::Error;
};
struct IncompleteAssignment : Error {
  using Error::Error;
};
struct IndivisibleRank : Error {
  using Error::Error;
};
struct NotPositive : Error {
  using Error::Error;
};
struct NotNormalized : Error {
  using Error::Error;
};
struct HashMismatch : Error {
  using Error::Error;
};
struct CorruptCertificate : Error {
  using Error::Error;
};
struct BadBlockSpec : Error {
  using Error::Error;
};
struct BadDensitySpec : Error {
  using Error::Error;
};
struct EmptyAlgebra : Error {
  using Error::Error;
};
// Raised when an exact-mode spectrum cannot be represented in the working
// field Q(sqrt r); the caller should fall back to float mode.
struct SpectrumNotInField : Error {
  using Error::Error;
};
struct IncompatibleSurd : Error {
  using Error::Error;
};
struct ClosureFailure : Error {
  using Error::Error;
};

}  // namespace kslat
