#pragma once

#include <stdexcept>

namespace qsbai {

// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structurally invalid graph: zero size, missing inverse arc, isolated vertex.
class InvalidGraph : public Error {
 public:
  using Error::Error;
};

// Malformed environment: bad eta rows, out-of-range winning pairs, empty subsets.
class InvalidEnvironment : public Error {
 public:
  using Error::Error;
};

// Two or more arms tie for the highest winning probability.
class AmbiguousBestArm : public Error {
 public:
  using Error::Error;
};

// Mean winning probability of 0 or 1; the timing rule is undefined there.
class DegenerateEnvironment : public Error {
 public:
  using Error::Error;
};

// Objects built over incompatible vertex/arc spaces were combined.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// Graph does not belong to the declared family, or the best arm lies
// outside the cluster the statistics were taken over.
class FamilyMismatch : public Error {
 public:
  using Error::Error;
};

// Recommendation distribution with significantly negative entries or a bad sum.
class InvalidDistribution : public Error {
 public:
  using Error::Error;
};

// Run configuration that does not match the documented schema.
class ConfigParseError : public Error {
 public:
  using Error::Error;
};

// Run configuration that parses but fails semantic validation.
class ConfigValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace qsbai
