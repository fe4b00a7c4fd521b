#pragma once

#include <stdexcept>
#include <string>

namespace credal {

/// Base class for every failure raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidArgumentError : Error {
  using Error::Error;
};

/// A probability vector entry is negative.
struct NegativeEntryError : Error {
  using Error::Error;
};

/// A probability vector deviates from sum 1 by more than the input tolerance.
struct SumNotOneError : Error {
  using Error::Error;
};

struct EmptyDatasetError : Error {
  using Error::Error;
};

/// Dirichlet density requested at a boundary point where it diverges.
struct BoundaryDivergenceError : Error {
  using Error::Error;
};

struct OutOfRangeError : Error {
  using Error::Error;
};

struct UnknownSymbolError : Error {
  using Error::Error;
};

/// The normalizing integral of a posterior expectation is numerically zero.
struct ZeroEvidenceError : Error {
  using Error::Error;
};

struct NonFiniteError : Error {
  using Error::Error;
};

/// Likelihood vanishes at the maximizer of the target monomial, so the
/// concentration-ratio limit is not defined.
struct DegenerateLError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace credal
