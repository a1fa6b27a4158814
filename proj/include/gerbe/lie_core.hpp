#pragma once

// SU(n), its diagonal maximal torus, the flag manifold realised as ordered
// tuples of rank-one projections, and the Weyl map between them.

#include <cstdint>
#include <random>
#include <vector>

#include "gerbe/types.hpp"

namespace gerbe {

inline constexpr double kGroupTol = 1e-12;

/// Element of SU(n). Construction validates unitarity and det = 1.
class SpecialUnitary {
 public:
  static SpecialUnitary from_matrix(Matrix m, double tol = kGroupTol);
  static SpecialUnitary identity(int n);

  const Matrix& matrix() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  SpecialUnitary inverse() const;

  friend SpecialUnitary operator*(const SpecialUnitary& a, const SpecialUnitary& b);

  /// Returns max(|U†U - I|_max, |det U - 1|).
  static double invariant_residual(const Matrix& m);

 private:
  explicit SpecialUnitary(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

/// Diagonal torus element diag(e^{2πi x_1}, ..., e^{2πi x_n}), phases in turns.
class TorusElement {
 public:
  static TorusElement from_phases(RealVector phases, double tol = kGroupTol);

  const RealVector& phases() const { return x_; }
  int dim() const { return static_cast<int>(x_.size()); }
  /// p_i(t) = e^{2πi x_i}.
  cplx eigenvalue(int i) const;
  Matrix as_matrix() const;
  SpecialUnitary as_unitary() const;

 private:
  explicit TorusElement(RealVector x) : x_(std::move(x)) {}
  RealVector x_;
};

/// Ordered n-tuple of rank-one, mutually orthogonal Hermitian projections
/// summing to the identity. This is the canonical representative of a coset gT.
class ProjectionTuple {
 public:
  static ProjectionTuple from_projections(std::vector<Matrix> projections,
                                          double tol = kGroupTol);
  /// The coordinate projections (O_1, ..., O_n).
  static ProjectionTuple standard(int n);

  int dim() const { return static_cast<int>(p_.size()); }
  const Matrix& operator[](int i) const { return p_[static_cast<std::size_t>(i)]; }
  const std::vector<Matrix>& projections() const { return p_; }

  /// (h P_1 h⁻¹, ..., h P_n h⁻¹) for unitary h.
  ProjectionTuple conjugated(const Matrix& h) const;

  /// Largest violation among hermiticity, idempotence, orthogonality,
  /// completeness and rank.
  static double invariant_residual(const std::vector<Matrix>& projections);

 private:
  explicit ProjectionTuple(std::vector<Matrix> p) : p_(std::move(p)) {}
  std::vector<Matrix> p_;
};

/// Tangent data. `real` carries torus / ℝ^{n-1} velocities (turns per unit
/// parameter, summing to zero) or plain coordinates on ℝ^m charts; `gen` is an
/// anti-Hermitian traceless generator acting on a flag by conjugation and on a
/// group element g by right translation (curve g·exp(sξ)).
struct TangentVector {
  RealVector real;
  Matrix gen;

  static TangentVector zero(int n, int real_dim);
  static TangentVector flag_direction(Matrix generator, int real_dim);
  static TangentVector torus_direction(RealVector velocity, int n);

  TangentVector operator+(const TangentVector& o) const;
  TangentVector operator*(double a) const;
  /// Conjugate the generator by h; the real part is untouched.
  TangentVector conjugated(const Matrix& h) const;
};

/// Point of T × Proj_n.
struct FlagPoint {
  TorusElement t;
  ProjectionTuple flag;
};

/// Point of ℝ^{n-1} × Proj_n with ℝ^{n-1} realised as the hyperplane Σx_i = 0.
class CupPoint {
 public:
  static CupPoint make(RealVector x, ProjectionTuple flag, double tol = kGroupTol);

  const RealVector& x() const { return x_; }
  const ProjectionTuple& flag() const { return flag_; }
  /// Torus element with phases congruent to x modulo 1.
  TorusElement torus_image() const;

 private:
  CupPoint(RealVector x, ProjectionTuple flag) : x_(std::move(x)), flag_(std::move(flag)) {}
  RealVector x_;
  ProjectionTuple flag_;
};

// --- matrix helpers -------------------------------------------------------

/// exp(ξ) for anti-Hermitian ξ, computed through the spectral decomposition of
/// the Hermitian matrix iξ so the result is unitary to rounding.
Matrix exp_anti_hermitian(const Matrix& xi);

/// Largest violation of ξ + ξ† = 0 and tr ξ = 0.
double generator_residual(const Matrix& xi);

Matrix commutator(const Matrix& a, const Matrix& b);

// --- sampling -------------------------------------------------------------

/// Haar-distributed element of SU(n): QR of a complex Ginibre matrix with the
/// phases of diag(R) removed, then scaled by an n-th root of det⁻¹.
SpecialUnitary haar_sample(int n, std::uint64_t seed);
SpecialUnitary haar_sample(int n, std::mt19937_64& rng);

/// Random anti-Hermitian traceless matrix with unit Frobenius norm.
Matrix random_generator(int n, std::mt19937_64& rng);
/// Uniform phases in [-1/2, 1/2) shifted to sum to zero.
RealVector random_sum_zero(int n, std::mt19937_64& rng);
TorusElement random_torus(int n, std::mt19937_64& rng);
ProjectionTuple random_flag(int n, std::mt19937_64& rng);
/// Tangent vector with random torus and flag components.
TangentVector random_tangent(int n, std::mt19937_64& rng);

// --- Weyl map -------------------------------------------------------------

/// p(t, P_1..P_n) = Σ p_i(t) P_i.
SpecialUnitary weyl_map(const TorusElement& t, const ProjectionTuple& flag);

/// (g O_1 g⁻¹, ..., g O_n g⁻¹).
ProjectionTuple flag_of(const SpecialUnitary& g);

/// d/ds|₀ of weyl_map along the curve (t·exp(s·2πi·diag(v.real)), exp(sξ)·F·exp(-sξ)).
Matrix weyl_derivative(const TorusElement& t, const ProjectionTuple& flag,
                       const TangentVector& v);

/// Same derivative expressed as a tangent vector at g = weyl_map(t, F):
/// gen = g⁻¹ dg, real part empty.
TangentVector weyl_pushforward(const TorusElement& t, const ProjectionTuple& flag,
                               const TangentVector& v);

/// Flow of a flag point: t advanced by s·v.real turns, flag conjugated by exp(sξ).
FlagPoint flow(const FlagPoint& p, const TangentVector& v, double s);

}  // namespace gerbe
