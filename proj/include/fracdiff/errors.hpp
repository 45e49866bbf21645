#pragma once

#include <stdexcept>
#include <string>

namespace fracdiff {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative or series evaluation failed to reach its tolerance.
class NonConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Diffusion coefficient below the ellipticity floor, or negative reaction.
class EllipticityError : public Error {
 public:
  using Error::Error;
};

/// Boundary data does not vanish at t = 0.
class CompatibilityError : public Error {
 public:
  using Error::Error;
};

/// Requested spectral or temporal basis exceeds the resolvable size.
class BasisSizeError : public Error {
 public:
  using Error::Error;
};

/// Fields or series live on different grids.
class GridMismatchError : public Error {
 public:
  using Error::Error;
};

class IllConditionedError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration or input file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace fracdiff
