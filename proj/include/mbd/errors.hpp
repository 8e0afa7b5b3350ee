#pragma once

#include <stdexcept>
#include <string>

namespace mbd {

/// Root of the library's exception hierarchy.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid configuration or parameter validation failure (CLI exit code 2).
struct ConfigError : Error {
  using Error::Error;
};

/// Singularity met while evaluating a solution (CLI exit code 3).
struct EvaluationError : Error {
  using Error::Error;
};

/// (phi+,phi) at or below the floor; marks a singular dressing point.
struct DegenerateVector : EvaluationError {
  using EvaluationError::EvaluationError;
};

/// lambda on the continuous-spectrum line: 2*lambda + i(eta - delta) ~ 0.
struct SpectralPole : EvaluationError {
  using EvaluationError::EvaluationError;
};

/// lambda at +-|E| where sigma = sqrt(lambda^2 - |E|^2) vanishes.
struct BranchPointAtE : EvaluationError {
  using EvaluationError::EvaluationError;
};

/// (chi, phi) vanished in a two-parameter dressing or symmetry term.
struct DegenerateInnerProduct : EvaluationError {
  using EvaluationError::EvaluationError;
};

/// Gram determinant of a closed-form solution vanished at the point.
struct DeterminantVanished : EvaluationError {
  using EvaluationError::EvaluationError;
};

/// Re(mu) = 0: the dressing step would leave the potentials unchanged.
struct TrivialStep : ConfigError {
  using ConfigError::ConfigError;
};

struct PopulationsOutOfRange : ConfigError {
  using ConfigError::ConfigError;
};

struct EmptyNodeSet : ConfigError {
  using ConfigError::ConfigError;
};

struct NonpositiveWidth : ConfigError {
  using ConfigError::ConfigError;
};

struct MissingPureState : ConfigError {
  using ConfigError::ConfigError;
};

/// Pure-state norm conservation failed; escalates a formula inconsistency.
struct NormDriftExceeded : Error {
  using Error::Error;
};

}  // namespace mbd
