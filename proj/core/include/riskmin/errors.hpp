#pragma once

#include <stdexcept>

namespace riskmin {

// Base of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Population vectors malformed: size mismatch, N < 2, nonpositive variance, non-finite entries.
class InvalidPopulationError : public Error {
 public:
  using Error::Error;
};

// Problem or scenario parameters out of range (p <= N, empty grid, n_trials < 1, ...).
class InvalidSpecError : public Error {
 public:
  using Error::Error;
};

// Moment discriminant too small: r and c are effectively proportional, the
// constrained family degenerates to a line.
class DegeneratePopulationError : public Error {
 public:
  using Error::Error;
};

// A closed form was requested outside alpha > 1 where it diverges.
class AlphaOutOfRangeError : public Error {
 public:
  using Error::Error;
};

// Covariance-like matrix not positive definite (Cholesky failed).
class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// Finite-sample constraint vectors nearly collinear: a d - b^2 ~ 0.
class CollinearConstraintsError : public Error {
 public:
  using Error::Error;
};

// Sharpe ratio requested at nonpositive risk.
class NonpositiveRiskError : public Error {
 public:
  using Error::Error;
};

// Sharpe argmax undefined: the risk minimum sits at the zero-excess-return point.
class VertexAtOriginError : public Error {
 public:
  using Error::Error;
};

// Config file unreadable, unparsable, or failing validation; message carries file and line.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Monte Carlo run aborted: too many failed trials or too few successes to aggregate.
class ExperimentFailedError : public Error {
 public:
  using Error::Error;
};

}  // namespace riskmin
