#pragma once

#include <stdexcept>
#include <string>

namespace skewrank {

/// Base class for all library errors. Subclasses carry the error names used
/// in reports and exit-code decisions.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed or inconsistent user input (CLI exit code 1).
struct InputError : Error {
  using Error::Error;
};

/// Internal consistency failure: a validated construction step produced
/// something impossible (CLI exit code 2).
struct InternalError : Error {
  using Error::Error;
};

struct DivisionByZero : InputError {
  DivisionByZero() : InputError("division by zero") {}
};
struct MixedFields : InputError {
  MixedFields() : InputError("operands belong to different fields") {}
};
struct ZeroRadicand : InputError {
  ZeroRadicand() : InputError("cannot adjoin the square root of zero") {}
};
struct DimensionMismatch : InputError {
  explicit DimensionMismatch(const std::string& w = "dimension mismatch") : InputError(w) {}
};
struct UnsupportedDimension : InputError {
  explicit UnsupportedDimension(const std::string& w) : InputError(w) {}
};
struct ZeroTensor : InputError {
  ZeroTensor() : InputError("tensor is zero") {}
};
struct ZeroCoefficients : InputError {
  ZeroCoefficients() : InputError("coefficient vector is zero") {}
};
struct NotConstantRank : InputError {
  NotConstantRank() : InputError("subspace does not have constant rank four") {}
};
struct NotQuadric : InputError {
  NotQuadric() : InputError("polynomial system must consist of quadrics") {}
};
struct TooManyVariables : InputError {
  TooManyVariables() : InputError("at most four variables are supported") {}
};
struct BadDimension : InputError {
  explicit BadDimension(const std::string& w) : InputError(w) {}
};
struct SizeMismatch : InputError {
  SizeMismatch() : InputError("matrix size mismatch") {}
};
struct DependentGenerators : InputError {
  DependentGenerators() : InputError("generators are linearly dependent") {}
};
struct NotSkew : InputError {
  explicit NotSkew(const std::string& w) : InputError(w) {}
};
struct BadField : InputError {
  explicit BadField(const std::string& w) : InputError(w) {}
};
struct ParseError : InputError {
  explicit ParseError(const std::string& w) : InputError(w) {}
};
struct UnknownCommand : InputError {
  explicit UnknownCommand(const std::string& w) : InputError(w) {}
};
struct MissingWitness : InputError {
  MissingWitness() : InputError("report carries no full witness matrix") {}
};
struct ChowIntersection : InputError {
  ChowIntersection() : InputError("plane meets the rank-two locus: rank-2 point found") {}
};
struct UnexpectedLocus : InternalError {
  explicit UnexpectedLocus(const std::string& w) : InternalError(w) {}
};
struct WitnessVerificationFailed : InternalError {
  WitnessVerificationFailed() : InternalError("constructed witness failed verification") {}
};

}  // namespace skewrank
