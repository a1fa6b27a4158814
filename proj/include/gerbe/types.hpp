#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gerbe {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched or unsupported dimension (n < 2, n mismatch, arity overflow).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// An input violates a documented invariant (unitarity, idempotence, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

/// A point of Z lies on, or too close to, the spectrum it is compared with.
class SpectrumError : public Error {
 public:
  using Error::Error;
};

/// Argument of log_z too close to the cut ray R_z.
class BranchCutError : public Error {
 public:
  using Error::Error;
};

/// Tie between arguments on the circle (never silently resolved).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

/// Two points that should lie in a common fibre do not.
class FibreError : public Error {
 public:
  using Error::Error;
};

/// Tangent data attached to a different base point or space.
class BaseMismatchError : public Error {
 public:
  using Error::Error;
};

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

}  // namespace gerbe
