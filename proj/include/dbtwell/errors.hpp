#pragma once

#include <stdexcept>

namespace dbtwell {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Factorization energy outside the admissible range (must lie below -1).
struct InvalidEpsilon : Error {
  using Error::Error;
};

/// Malformed grid parameters (even node count, non-positive width, ...).
struct InvalidGrid : Error {
  using Error::Error;
};

/// A bound state has not decayed at the grid edges.
struct GridTooNarrow : Error {
  using Error::Error;
};

struct ConvergenceFailure : Error {
  using Error::Error;
};

struct BoundStateCountMismatch : Error {
  using Error::Error;
};

}  // namespace dbtwell
